import copy
from typing import List, Optional

from weyl_moe.data.enums import ReportFormat


class RunConfig:
    """
    Fully resolved settings for one command: CLI flags over the loaded
    configuration over the defaults. to_dict is embedded in every report.
    """

    # fields that never change the reported numbers
    _not_reported = {"threads", "output"}

    def __init__(
        self,
        command: str,
        d: Optional[int] = None,
        r: Optional[float] = None,
        p: Optional[float] = None,
        q: Optional[float] = None,
        lam: Optional[float] = None,
        k: int = 2,
        n: int = 200,
        starts: int = 32,
        samples: int = 10000,
        seed: int = 0,
        log_base: str = "2",
        eig_clip: float = 1e-12,
        max_iterations: int = 10000,
        tolerance: float = 1e-11,
        polish: bool = True,
        threads: Optional[int] = None,
        pass_threshold: float = -1e-8,
        decomposition_tolerance: float = 1e-10,
        additivity_tolerance: float = 1e-5,
        chi_tolerance: float = 1e-6,
        channel: str = "weyl",
        channel_json: Optional[str] = None,
        psi: str = "identity",
        psi_q: float = 0.5,
        psi_rank: int = 2,
        sweep_command: Optional[str] = None,
        p_grid: Optional[str] = None,
        r_grid: Optional[str] = None,
        q_grid: Optional[str] = None,
        exploratory: bool = False,
        format: ReportFormat = ReportFormat.json,
        output: Optional[str] = None,
    ):
        self.command = command
        self.d = d
        self.r = r
        self.p = p
        self.q = q
        self.lam = lam
        self.k = k
        self.n = n
        self.starts = starts
        self.samples = samples
        self.seed = seed
        self.log_base = log_base
        self.eig_clip = eig_clip
        self.max_iterations = max_iterations
        self.tolerance = tolerance
        self.polish = polish
        self.threads = threads
        self.pass_threshold = pass_threshold
        self.decomposition_tolerance = decomposition_tolerance
        self.additivity_tolerance = additivity_tolerance
        self.chi_tolerance = chi_tolerance
        self.channel = channel
        self.channel_json = channel_json
        self.psi = psi
        self.psi_q = psi_q
        self.psi_rank = psi_rank
        self.sweep_command = sweep_command
        self.p_grid = p_grid
        self.r_grid = r_grid
        self.q_grid = q_grid
        self.exploratory = exploratory
        self.format = format
        self.output = output

    def entropy_config(self):
        from weyl_moe.entropy import EntropyConfig

        return EntropyConfig(
            log_base=self.log_base,
            eig_clip=self.eig_clip,
            max_iterations=self.max_iterations,
            tolerance=self.tolerance,
            polish=self.polish,
            threads=self.threads,
        )

    def with_values(self, **kwargs) -> "RunConfig":
        cell = copy.copy(self)
        for k, v in kwargs.items():
            setattr(cell, k, v)
        return cell

    def to_dict(self):
        d = {k: v for k, v in vars(self).items() if k not in self._not_reported}
        d["format"] = str(self.format)
        return d


class CommandResult:
    """
    What a command produced: the JSON report, the rows for csv/table output and
    whether every gated check passed.
    """

    def __init__(
        self, report: dict, rows: List[dict], columns: List[str], passed: bool
    ):
        self.report = report
        self.rows = rows
        self.columns = columns
        self.passed = passed
