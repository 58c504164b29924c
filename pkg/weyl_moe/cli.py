import sys
import argparse
import json

from janis_core.utils.logger import Logger, LogLevel

from weyl_moe.data.enums import (
    ChannelName,
    Command,
    LogBase,
    PsiName,
    ReportFormat,
)
from weyl_moe.data.models import RunConfig
from weyl_moe.errors import WeylMoeError
from weyl_moe.main import run
from weyl_moe.management.configuration import WeylConfiguration
from weyl_moe.utils import convert_argname_to_prefix
from weyl_moe.utils.reports import render_report, write_report

# library parameter names that correspond one to one with a flag
FLAG_PARAMETERS = {
    "d",
    "r",
    "p",
    "q",
    "lambda",
    "k",
    "n",
    "starts",
    "samples",
    "seed",
    "log-base",
    "channel-json",
    "psi-q",
    "psi-rank",
    "p-grid",
    "r-grid",
    "q-grid",
    "command",
}


class DefaultHelpArgParser(argparse.ArgumentParser):
    def error(self, message):
        write_error({"error": "ArgumentError", "message": message, "parameter": None})
        self.print_usage(sys.stderr)
        sys.exit(2)


def write_error(payload: dict):
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def report_error(e: WeylMoeError):
    payload = e.to_dict()
    if e.parameter in FLAG_PARAMETERS:
        payload["flag"] = convert_argname_to_prefix(e.parameter)
    Logger.critical(f"{e.__class__.__name__}: {e.message}")
    write_error(payload)


def process_args(sysargs=None):
    cmds = {
        "version": do_version,
        "chi": do_chi,
        "verify-theorem": do_verify_theorem,
        "verify-theorem2": do_verify_theorem2,
        "verify-decomposition": do_verify_decomposition,
        "additivity": do_additivity,
        "sweep": do_sweep,
        "check-channel": do_check_channel,
    }

    parser = DefaultHelpArgParser(
        description="Build covariant Weyl channels and verify their entropy bounds"
    )

    add_logger_args(parser)
    parser.add_argument("-v", "--version", action="store_true")

    subparsers = parser.add_subparsers(dest="command")

    add_chi_args(
        subparsers.add_parser("chi", help="Estimate the minimal output entropy χ")
    )
    add_verify_theorem_args(
        subparsers.add_parser(
            "verify-theorem",
            help="Check the tensor-product bound on a batch of random states",
        )
    )
    add_verify_theorem2_args(
        subparsers.add_parser(
            "verify-theorem2", help="Check the depolarizing form of the bound"
        )
    )
    add_verify_decomposition_args(
        subparsers.add_parser(
            "verify-decomposition",
            help="Check the depolarizing / q-c and phase damping decompositions",
        )
    )
    add_additivity_args(
        subparsers.add_parser(
            "additivity", help="Compare χ(Φ⊗Ψ) with χ(Φ) + χ(Ψ) numerically"
        )
    )
    add_sweep_args(
        subparsers.add_parser("sweep", help="Run a command over a parameter grid")
    )
    add_check_channel_args(
        subparsers.add_parser(
            "check-channel", help="Report CPTP, unitality and covariance defects"
        )
    )
    subparsers.add_parser("version", help="Print the versions of weyl-moe and exit")

    args = parser.parse_args(sysargs)

    if args.version:
        return do_version(args)

    check_logger_args(args)

    if not args.command:
        parser.print_help()
        sys.exit(2)

    try:
        return cmds[args.command](args)
    except WeylMoeError as e:
        report_error(e)
        sys.exit(2)


def add_logger_args(parser):
    parser.add_argument(
        "-d", "--debug", help="log debug", dest="debug", action="store_true"
    )
    parser.add_argument(
        "--verbose", "--logVerbose", help="log verbose", action="store_true"
    )
    parser.add_argument(
        "--logDebug", help="log debug", dest="debug", action="store_true"
    )
    parser.add_argument("--logInfo", help="log info", action="store_true")
    parser.add_argument("--logWarn", help="log warning", action="store_true")
    parser.add_argument("--logCritical", help="log critical", action="store_true")
    parser.add_argument("--logNone", help="log nothing", action="store_true")
    parser.add_argument(
        "-L",
        "--logLevel",
        choices=["VERB", "DEBUG", "INFO", "WARN", "CRITICAL", "NONE"],
    )

    return parser


def add_output_args(parser):
    parser.add_argument("-c", "--config", help="Path to a weyl-moe YAML config")
    parser.add_argument(
        "--format",
        choices=ReportFormat.all(),
        default=ReportFormat.json.value,
        help="Report format, csv and table only contain the report rows",
    )
    parser.add_argument(
        "-o", "--output", help="Write the report here instead of stdout"
    )
    parser.add_argument("--seed", type=int, help="Seed for every random draw")
    parser.add_argument(
        "--log-base",
        dest="log_base",
        choices=LogBase.all(),
        help="Entropies in bits (2) or nats (e)",
    )
    return parser


def add_dimension_args(parser):
    parser.add_argument("--d", type=int, help="Dimension of the input space H")
    return parser


def add_region_args(parser):
    parser.add_argument("--r", type=float, help="Weight of each W_{m,0}, m >= 1")
    parser.add_argument("--p", type=float, help="Weight of each W_{m,n}, n >= 1")
    return parser


def add_optimizer_args(parser):
    parser.add_argument("--starts", type=int, help="Random starts of the optimizer")
    parser.add_argument(
        "--samples",
        type=int,
        help="Haar samples for the oracle cross-check (0 to skip)",
    )
    return parser


def add_channel_args(parser):
    parser.add_argument(
        "--channel",
        choices=ChannelName.all(),
        default=ChannelName.weyl.value,
        help="Built-in channel family",
    )
    parser.add_argument(
        "--channel-json",
        dest="channel_json",
        help="Load the channel from a JSON file instead (overrides --channel)",
    )
    parser.add_argument(
        "--q", type=float, help="Noise parameter of the depolarizing and q-c channels"
    )
    parser.add_argument(
        "--lambda", type=float, dest="lam", help="Phase damping parameter"
    )
    return parser


def add_psi_args(parser):
    parser.add_argument(
        "--psi",
        choices=PsiName.all(),
        default=PsiName.identity.value,
        help="Channel Ψ acting on the second factor K, phi takes Ψ = Φ",
    )
    parser.add_argument(
        "--psi-q", dest="psi_q", type=float, default=0.5, help="q of a depolarizing Ψ"
    )
    parser.add_argument(
        "--psi-rank",
        dest="psi_rank",
        type=int,
        default=2,
        help="Kraus rank of a random Ψ",
    )
    parser.add_argument("--k", type=int, default=2, help="Dimension of K")
    return parser


def add_batch_args(parser):
    parser.add_argument("--n", type=int, help="Number of random composite states")
    return parser


def add_exploratory_args(parser):
    parser.add_argument(
        "--exploratory",
        action="store_true",
        help="Skip the region check on (r, p), results never gate the exit code",
    )
    return parser


def add_chi_args(parser):
    add_output_args(parser)
    add_optimizer_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    add_channel_args(parser)
    return parser


def add_verify_theorem_args(parser):
    add_output_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    add_psi_args(parser)
    add_batch_args(parser)
    add_exploratory_args(parser)
    return parser


def add_verify_theorem2_args(parser):
    add_output_args(parser)
    add_dimension_args(parser)
    parser.add_argument("--q", type=float, help="q of the depolarizing channel")
    parser.add_argument("--k", type=int, default=2, help="Dimension of K")
    add_batch_args(parser)
    return parser


def add_verify_decomposition_args(parser):
    add_output_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    return parser


def add_additivity_args(parser):
    add_output_args(parser)
    add_optimizer_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    add_psi_args(parser)
    return parser


def add_sweep_args(parser):
    parser.add_argument(
        "--command",
        dest="sweep_command",
        choices=Command.sweepable(),
        required=True,
        help="Command to run in every grid cell",
    )
    add_output_args(parser)
    add_optimizer_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    add_channel_args(parser)
    add_psi_args(parser)
    add_batch_args(parser)
    add_exploratory_args(parser)
    for name in ("p", "r", "q"):
        parser.add_argument(
            f"--{name}-grid",
            dest=f"{name}_grid",
            help=f"Grid for {name} as start:stop:count, endpoints included",
        )
    return parser


def add_check_channel_args(parser):
    add_output_args(parser)
    add_dimension_args(parser)
    add_region_args(parser)
    add_channel_args(parser)
    return parser


def check_logger_args(args):
    level = LogLevel.INFO
    if args.verbose:
        level = LogLevel.VERBOSE
    if args.debug:
        level = LogLevel.DEBUG
    if args.logInfo:
        level = LogLevel.INFO
    if args.logWarn:
        level = LogLevel.WARNING
    if args.logCritical:
        level = LogLevel.CRITICAL
    if args.logNone:
        level = None
    if args.logLevel:
        level = LogLevel.from_str(args.logLevel)

    Logger.set_console_level(level)


def _arg(args, name, default=None):
    value = getattr(args, name, None)
    return default if value is None else value


def build_run_config(command: str, args) -> RunConfig:
    """
    CLI flags win over the YAML configuration, which wins over the defaults.
    """
    conf = WeylConfiguration.initial_configuration(_arg(args, "config"))
    return RunConfig(
        command=command,
        d=_arg(args, "d"),
        r=_arg(args, "r"),
        p=_arg(args, "p"),
        q=_arg(args, "q"),
        lam=_arg(args, "lam"),
        k=_arg(args, "k", 2),
        n=_arg(args, "n", conf.verification.batch),
        starts=_arg(args, "starts", conf.optimizer.starts),
        samples=_arg(args, "samples", conf.optimizer.samples),
        seed=_arg(args, "seed", conf.seed),
        log_base=str(_arg(args, "log_base", conf.entropy.log_base)),
        eig_clip=conf.entropy.eig_clip,
        max_iterations=conf.optimizer.max_iterations,
        tolerance=conf.optimizer.tolerance,
        polish=conf.optimizer.polish,
        threads=conf.threads,
        pass_threshold=conf.verification.pass_threshold,
        decomposition_tolerance=conf.verification.decomposition_tolerance,
        additivity_tolerance=conf.verification.additivity_tolerance,
        channel=_arg(args, "channel", ChannelName.weyl.value),
        channel_json=_arg(args, "channel_json"),
        psi=_arg(args, "psi", PsiName.identity.value),
        psi_q=_arg(args, "psi_q", 0.5),
        psi_rank=_arg(args, "psi_rank", 2),
        sweep_command=_arg(args, "sweep_command"),
        p_grid=_arg(args, "p_grid"),
        r_grid=_arg(args, "r_grid"),
        q_grid=_arg(args, "q_grid"),
        exploratory=bool(_arg(args, "exploratory", False)),
        format=ReportFormat(_arg(args, "format", ReportFormat.json.value)),
        output=_arg(args, "output"),
    )


def run_and_report(command: Command, args) -> int:
    rc = build_run_config(str(command), args)
    result = run(rc)
    write_report(
        render_report(result.report, result.rows, result.columns, rc.format),
        rc.output,
    )
    if not result.passed:
        Logger.critical(f"'{command}' failed verification")
        return 1
    return 0


def do_chi(args):
    return run_and_report(Command.chi, args)


def do_verify_theorem(args):
    return run_and_report(Command.verify_theorem, args)


def do_verify_theorem2(args):
    return run_and_report(Command.verify_theorem2, args)


def do_verify_decomposition(args):
    return run_and_report(Command.verify_decomposition, args)


def do_additivity(args):
    return run_and_report(Command.additivity, args)


def do_sweep(args):
    return run_and_report(Command.sweep, args)


def do_check_channel(args):
    return run_and_report(Command.check_channel, args)


def do_version(_):
    from tabulate import tabulate
    import numpy
    import scipy

    from weyl_moe.__meta__ import __version__ as wm_version
    from janis_core.__meta__ import __version__ as jc_version

    fields = [
        ["weyl-moe", wm_version],
        ["janis-core", jc_version],
        ["numpy", numpy.__version__],
        ["scipy", scipy.__version__],
    ]
    print(tabulate(fields))
    return 0
