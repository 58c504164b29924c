import os.path
from typing import Optional, List, Union

import ruamel.yaml
from janis_core.utils.logger import Logger

from weyl_moe.management.envvariables import EnvVariables, HashableEnum


class NoAttributeErrors:
    def __getattr__(self, item):
        try:
            return self.__getattribute__(item)
        except AttributeError:
            # Give None to support partially specified configurations
            return None

    def __getstate__(self):
        return self.__dict__

    def __setstate__(self, d):
        self.__dict__.update(d)


class WeylConfiguration(NoAttributeErrors):
    class Keys(HashableEnum):
        Seed = "seed"
        Threads = "threads"
        Entropy = "entropy"
        Optimizer = "optimizer"
        Verification = "verification"

    _managed = None  # type: WeylConfiguration

    @staticmethod
    def initial_configuration(potential_paths: Optional[Union[str, List[str]]]):

        paths_to_check = []
        if potential_paths:
            if isinstance(potential_paths, list):
                paths_to_check.extend(potential_paths)
            else:
                paths_to_check.append(potential_paths)

        default_path = EnvVariables.config_path.resolve(False)
        if default_path:
            paths_to_check.append(default_path)
        paths_to_check.append(EnvVariables.config_path.default())

        WeylConfiguration._managed = None
        for p in paths_to_check:
            if not p:
                continue
            p = os.path.expanduser(p)
            if not os.path.exists(p):
                continue

            Logger.log(f"Loading configuration from '{p}'")
            with open(p) as cp:
                y = ruamel.yaml.safe_load(cp)
                WeylConfiguration._managed = WeylConfiguration(y)
                break

        if not WeylConfiguration._managed:
            WeylConfiguration._managed = WeylConfiguration()

        return WeylConfiguration._managed

    class WeylConfigurationEntropy(NoAttributeErrors):
        class Keys(HashableEnum):
            LogBase = "log_base"
            EigClip = "eig_clip"

        def __init__(self, d: dict, default: dict):
            d = d if d else {}

            self.log_base = WeylConfiguration.get_value_for_key(
                d, self.Keys.LogBase, default
            )
            self.eig_clip = float(
                WeylConfiguration.get_value_for_key(d, self.Keys.EigClip, default)
            )

    class WeylConfigurationOptimizer(NoAttributeErrors):
        class Keys(HashableEnum):
            Starts = "starts"
            Samples = "samples"
            MaxIterations = "max_iterations"
            Tolerance = "tolerance"
            Polish = "polish"

        def __init__(self, d: dict, default: dict):
            d = d if d else {}

            self.starts = int(
                WeylConfiguration.get_value_for_key(d, self.Keys.Starts, default)
            )
            self.samples = int(
                WeylConfiguration.get_value_for_key(d, self.Keys.Samples, default)
            )
            self.max_iterations = int(
                WeylConfiguration.get_value_for_key(d, self.Keys.MaxIterations, default)
            )
            self.tolerance = float(
                WeylConfiguration.get_value_for_key(d, self.Keys.Tolerance, default)
            )
            self.polish = bool(
                WeylConfiguration.get_value_for_key(d, self.Keys.Polish, default)
            )

    class WeylConfigurationVerification(NoAttributeErrors):
        class Keys(HashableEnum):
            PassThreshold = "pass_threshold"
            DecompositionTolerance = "decomposition_tolerance"
            AdditivityTolerance = "additivity_tolerance"
            Batch = "batch"

        def __init__(self, d: dict, default: dict):
            d = d if d else {}

            self.pass_threshold = float(
                WeylConfiguration.get_value_for_key(d, self.Keys.PassThreshold, default)
            )
            self.decomposition_tolerance = float(
                WeylConfiguration.get_value_for_key(
                    d, self.Keys.DecompositionTolerance, default
                )
            )
            self.additivity_tolerance = float(
                WeylConfiguration.get_value_for_key(
                    d, self.Keys.AdditivityTolerance, default
                )
            )
            self.batch = int(
                WeylConfiguration.get_value_for_key(d, self.Keys.Batch, default)
            )

    def __init__(self, d: dict = None):
        default = self.base()
        d = d if d else {}

        extra = "" if not d else " from loaded config"
        Logger.debug("Instantiating WeylConfiguration" + extra)

        self.seed = int(self.get_value_for_key(d, WeylConfiguration.Keys.Seed, default))
        self.threads = self.get_value_for_key(d, WeylConfiguration.Keys.Threads, default)

        self.entropy = WeylConfiguration.WeylConfigurationEntropy(
            d.get(WeylConfiguration.Keys.Entropy.value),
            default.get(WeylConfiguration.Keys.Entropy.value),
        )
        self.optimizer = WeylConfiguration.WeylConfigurationOptimizer(
            d.get(WeylConfiguration.Keys.Optimizer.value),
            default.get(WeylConfiguration.Keys.Optimizer.value),
        )
        self.verification = WeylConfiguration.WeylConfigurationVerification(
            d.get(WeylConfiguration.Keys.Verification.value),
            default.get(WeylConfiguration.Keys.Verification.value),
        )

        WeylConfiguration._managed = self

    @staticmethod
    def get_value_for_key(d, key, default):
        val = d.get(str(key))
        if val is None:
            return default.get(str(key)) if default else None

        Logger.log(f"Got value '{val}' for key '{key}'")
        return val

    @staticmethod
    def base():
        """
        The defaults listed here should be sensible defaults

        :return:
        """

        deflt = {
            WeylConfiguration.Keys.Seed: 0,
            WeylConfiguration.Keys.Threads: EnvVariables.threads.resolve(True),
            WeylConfiguration.Keys.Entropy: {
                WeylConfiguration.WeylConfigurationEntropy.Keys.LogBase: "2",
                WeylConfiguration.WeylConfigurationEntropy.Keys.EigClip: 1e-12,
            },
            WeylConfiguration.Keys.Optimizer: {
                WeylConfiguration.WeylConfigurationOptimizer.Keys.Starts: 32,
                WeylConfiguration.WeylConfigurationOptimizer.Keys.Samples: 10000,
                WeylConfiguration.WeylConfigurationOptimizer.Keys.MaxIterations: 10000,
                WeylConfiguration.WeylConfigurationOptimizer.Keys.Tolerance: 1e-11,
                WeylConfiguration.WeylConfigurationOptimizer.Keys.Polish: True,
            },
            WeylConfiguration.Keys.Verification: {
                WeylConfiguration.WeylConfigurationVerification.Keys.PassThreshold: -1e-8,
                WeylConfiguration.WeylConfigurationVerification.Keys.DecompositionTolerance: 1e-10,
                WeylConfiguration.WeylConfigurationVerification.Keys.AdditivityTolerance: 1e-5,
                WeylConfiguration.WeylConfigurationVerification.Keys.Batch: 200,
            },
        }
        return stringify_dict_keys_or_return_value(deflt)


def stringify_dict_keys_or_return_value(d):
    if d is None:
        return d
    if isinstance(d, list):
        return [stringify_dict_keys_or_return_value(dd) for dd in d]
    if isinstance(d, int) or isinstance(d, float) or isinstance(d, bool):
        return d
    if not isinstance(d, dict):
        return str(d)

    out = {}
    for k, v in d.items():
        out[str(k)] = stringify_dict_keys_or_return_value(v)
    return out
