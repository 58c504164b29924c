"""
    This could be seen as the "interface" from the CLI. Every command has one
    function here that takes a resolved RunConfig and returns a CommandResult.

    NO maths should be here. Please reference the channels, entropy and verify
    modules.
"""
from typing import Callable, Dict, List, Optional, Tuple

from janis_core.utils.logger import Logger

from weyl_moe.channels import (
    Channel,
    ChannelParams,
    bistochastic_defect,
    covariance_defect,
    cptp_defect,
    depolarizing,
    from_json,
    identity_channel,
    phase_damping,
    qc_channel,
    random_channel,
    to_dict,
    weyl_channel,
)
from weyl_moe.data.enums import ChannelName, Command, PsiName
from weyl_moe.data.models import ChiReport, CommandResult, RunConfig
from weyl_moe.entropy import (
    chi_dep_closed,
    chi_qc_closed,
    minimize_output_entropy,
    sample_chi_oracle,
)
from weyl_moe.errors import InvalidParameter, WeylMoeError
from weyl_moe.linalg import spawn_generators
from weyl_moe.utils import parse_grid
from weyl_moe.verify import (
    additivity_gap,
    decompose_lambda,
    decomposition_report,
    in_region,
    random_theorem2_batch,
    random_theorem_batch,
)

CHI_COLUMNS = [
    "channel",
    "d",
    "r",
    "p",
    "q",
    "lambda",
    "chi",
    "closed_form",
    "oracle",
    "seed",
]
THEOREM_COLUMNS = [
    "d",
    "r",
    "p",
    "lambda",
    "lhs",
    "rhs",
    "margin",
    "variant",
    "seed",
    "psi_spec",
]
DECOMPOSITION_COLUMNS = ["d", "r", "p", "lambda", "mix_residual", "compose_residual"]
ADDITIVITY_COLUMNS = ["d", "r", "p", "lambda", "chi_phi", "chi_tensor", "gap", "seed"]
CHECK_COLUMNS = [
    "channel",
    "d",
    "cp_defect",
    "tp_defect",
    "bistochastic_defect",
    "covariance_defect",
]

COVARIANCE_SAMPLES = 100
CPTP_TOLERANCE = 1e-10


def _require(rc: RunConfig, *names):
    for name in names:
        if getattr(rc, name) is None:
            flag = "lambda" if name == "lam" else name
            raise InvalidParameter(f"'{rc.command}' requires --{flag}", parameter=flag)


# (attribute, reported parameter, smallest allowed value)
INTEGER_BOUNDS = [
    ("d", "d", 1),
    ("k", "k", 1),
    ("n", "n", 1),
    ("starts", "starts", 1),
    ("samples", "samples", 0),
    ("seed", "seed", 0),
    ("psi_rank", "psi-rank", 1),
]


def validate_run_config(rc: RunConfig):
    """
    Reject out of range integer settings before any work is done.
    """
    for attr, parameter, minimum in INTEGER_BOUNDS:
        value = getattr(rc, attr)
        if value is not None and value < minimum:
            raise InvalidParameter(
                f"{parameter} must be >= {minimum}, received {value}",
                parameter=parameter,
            )


def build_channel(rc: RunConfig) -> Tuple[Channel, dict]:
    if rc.channel_json:
        try:
            with open(rc.channel_json) as f:
                ch = from_json(f.read())
        except OSError as e:
            raise InvalidParameter(
                f"Couldn't read channel JSON '{rc.channel_json}': {e}",
                parameter="channel-json",
            )
        except WeylMoeError as e:
            raise InvalidParameter(
                f"Invalid channel in '{rc.channel_json}': {e.message}",
                parameter="channel-json",
            )
        Logger.info(f"Loaded channel from '{rc.channel_json}'")
        return ch, {"type": "json", "path": rc.channel_json}

    name = ChannelName(rc.channel)
    _require(rc, "d")
    if name == ChannelName.weyl:
        _require(rc, "r", "p")
        ch = weyl_channel(ChannelParams(rc.d, rc.r, rc.p))
        return ch, {"type": str(name), "d": rc.d, "r": rc.r, "p": rc.p}
    if name == ChannelName.depolarizing:
        _require(rc, "q")
        return depolarizing(rc.d, rc.q), {"type": str(name), "d": rc.d, "q": rc.q}
    if name == ChannelName.qc:
        _require(rc, "q")
        return qc_channel(rc.d, rc.q), {"type": str(name), "d": rc.d, "q": rc.q}
    if name == ChannelName.phase_damping:
        _require(rc, "lam")
        ch = phase_damping(rc.d, rc.lam)
        return ch, {"type": str(name), "d": rc.d, "lambda": rc.lam}
    return identity_channel(rc.d), {"type": str(name), "d": rc.d}


def build_psi(rc: RunConfig) -> Tuple[Channel, dict]:
    """
    Ψ on the second factor, of dimension --k except for phi which is Φ itself
    and acts on dimension --d.
    """
    name = PsiName(rc.psi)
    if name == PsiName.phi:
        _require(rc, "d", "r", "p")
        ch = weyl_channel(ChannelParams(rc.d, rc.r, rc.p))
        return ch, {"type": str(name), "k": rc.d, "r": rc.r, "p": rc.p}
    if name == PsiName.depolarizing:
        spec = {"type": str(name), "k": rc.k, "q": rc.psi_q}
        return depolarizing(rc.k, rc.psi_q), spec
    if name == PsiName.random:
        ch = random_channel(rc.k, rc.psi_rank, rc.seed)
        spec = {"type": str(name), "k": rc.k, "rank": rc.psi_rank, "seed": rc.seed}
        return ch, spec
    return identity_channel(rc.k), {"type": str(name), "k": rc.k}


def closed_form_chi(rc: RunConfig, cfg) -> Optional[float]:
    """
    The known minimal output entropy of the built-in channels, None when there
    is no closed form (a Weyl channel outside the region or a JSON channel).
    """
    if rc.channel_json:
        return None
    name = ChannelName(rc.channel)
    if name == ChannelName.depolarizing:
        return chi_dep_closed(rc.d, rc.q, cfg)
    if name == ChannelName.qc:
        return chi_qc_closed(rc.d, rc.q, cfg)
    if name == ChannelName.weyl and in_region(rc.d, rc.r, rc.p):
        return chi_dep_closed(rc.d, rc.d ** 2 * rc.p, cfg)
    if name in (ChannelName.identity, ChannelName.phase_damping):
        # Fourier basis states are left pure
        return 0.0
    return None


def _report(rc: RunConfig, body: dict, passed: bool) -> dict:
    return {"command": rc.command, "config": rc.to_dict(), "passed": passed, **body}


def run_chi(rc: RunConfig) -> CommandResult:
    cfg = rc.entropy_config()
    ch, spec = build_channel(rc)
    gen_opt, gen_oracle = spawn_generators(rc.seed, 2)

    estimate = minimize_output_entropy(ch, rc.starts, gen_opt, cfg)
    oracle = None
    if rc.samples:
        oracle = sample_chi_oracle(ch, rc.samples, gen_oracle, cfg)
    chi = ChiReport(
        channel_spec=spec,
        estimate=estimate,
        closed_form=closed_form_chi(rc, cfg),
        oracle=oracle,
        seed=rc.seed,
        tolerance=rc.chi_tolerance,
    )
    lam = None
    is_weyl = not rc.channel_json and rc.channel == str(ChannelName.weyl)
    if is_weyl and in_region(rc.d, rc.r, rc.p):
        lam = decompose_lambda(rc.d, rc.r, rc.p)
    row = {
        "channel": spec.get("type"),
        "d": rc.d,
        "r": rc.r,
        "p": rc.p,
        "q": rc.q,
        "lambda": lam,
        "chi": chi.chi,
        "closed_form": chi.closed_form,
        "oracle": chi.oracle,
        "seed": rc.seed,
    }
    Logger.info(f"χ estimate {chi.chi:.12g} {cfg.log_base.unit()}")
    return CommandResult(
        _report(rc, chi.to_dict(), chi.passed), [row], CHI_COLUMNS, chi.passed
    )


def _theorem_result(rc: RunConfig, reports) -> CommandResult:
    worst = min(reports, key=lambda r: r.margin)
    gated = not rc.exploratory
    passed = all(r.passed for r in reports) if gated else True
    body = {
        "gated": gated,
        "worst_margin": worst.margin,
        "worst_normalized_margin": min(r.normalized_margin for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    rows = [r.to_dict() for r in reports]
    return CommandResult(_report(rc, body, passed), rows, THEOREM_COLUMNS, passed)


def run_verify_theorem(rc: RunConfig) -> CommandResult:
    _require(rc, "d", "r", "p")
    psi, psi_spec = build_psi(rc)
    reports = random_theorem_batch(
        rc.d,
        rc.r,
        rc.p,
        psi,
        psi.dim_in,
        rc.n,
        rc.seed,
        rc.entropy_config(),
        exploratory=rc.exploratory,
        psi_spec=psi_spec,
        threshold=rc.pass_threshold,
    )
    return _theorem_result(rc, reports)


def run_verify_theorem2(rc: RunConfig) -> CommandResult:
    _require(rc, "d", "q")
    reports = random_theorem2_batch(
        rc.d,
        rc.q,
        rc.k,
        rc.n,
        rc.seed,
        rc.entropy_config(),
        threshold=rc.pass_threshold,
    )
    return _theorem_result(rc, reports)


def run_verify_decomposition(rc: RunConfig) -> CommandResult:
    _require(rc, "d", "r", "p")
    report = decomposition_report(rc.d, rc.r, rc.p, rc.decomposition_tolerance)
    row = report.to_dict()
    return CommandResult(
        _report(rc, row, report.passed), [row], DECOMPOSITION_COLUMNS, report.passed
    )


def run_additivity(rc: RunConfig) -> CommandResult:
    _require(rc, "d", "r", "p")
    psi, psi_spec = build_psi(rc)
    report = additivity_gap(
        ChannelParams(rc.d, rc.r, rc.p),
        psi,
        starts=rc.starts,
        rng=rc.seed,
        cfg=rc.entropy_config(),
        psi_spec=psi_spec,
        tolerance=rc.additivity_tolerance,
    )
    row = report.to_dict()
    return CommandResult(
        _report(rc, row, report.passed), [row], ADDITIVITY_COLUMNS, report.passed
    )


def run_check_channel(rc: RunConfig) -> CommandResult:
    ch, spec = build_channel(rc)
    cp, tp = cptp_defect(ch)
    covariance = None
    if ch.dim_in == ch.dim_out:
        covariance = covariance_defect(ch, COVARIANCE_SAMPLES, rc.seed)
    passed = cp <= CPTP_TOLERANCE and tp <= CPTP_TOLERANCE
    row = {
        "channel": spec.get("type"),
        "d": ch.dim_in,
        "cp_defect": cp,
        "tp_defect": tp,
        "bistochastic_defect": bistochastic_defect(ch),
        "covariance_defect": covariance,
    }
    body = {**row, "spec": spec, "serialized": to_dict(ch)}
    return CommandResult(_report(rc, body, passed), [row], CHECK_COLUMNS, passed)


def sweep_cells(rc: RunConfig) -> List[RunConfig]:
    """
    Expand the grids into cells ordered by grid index. Without an r grid or
    --r, r follows p (the depolarizing edge of the region). (r, p) cells outside
    the region are skipped.
    """
    if rc.sweep_command not in Command.sweepable():
        raise InvalidParameter(
            f"Cannot sweep '{rc.sweep_command}', "
            f"expected one of {Command.sweepable()}",
            parameter="command",
        )
    _require(rc, "d")
    sub = rc.with_values(command=rc.sweep_command)

    if rc.q_grid:
        return [sub.with_values(q=q) for q in parse_grid(rc.q_grid, "q-grid")]

    ps = parse_grid(rc.p_grid, "p-grid") if rc.p_grid else [rc.p]
    rs = parse_grid(rc.r_grid, "r-grid") if rc.r_grid else [rc.r]
    cells = []
    for p in ps:
        for r in rs:
            r = p if r is None else r
            if p is None:
                raise InvalidParameter(
                    "A sweep needs --p or --p-grid", parameter="p-grid"
                )
            if rc.sweep_command != str(Command.chi) and not in_region(rc.d, r, p):
                Logger.warn(f"Skipping cell r={r}, p={p} outside the region")
                continue
            cells.append(sub.with_values(r=r, p=p))
    return cells


def run_sweep(rc: RunConfig) -> CommandResult:
    cells = sweep_cells(rc)
    Logger.info(f"Sweeping '{rc.sweep_command}' over {len(cells)} cells")
    runner = COMMANDS[rc.sweep_command]
    rows, columns, passed = [], None, True
    for i, cell in enumerate(cells):
        result = runner(cell)
        columns = result.columns
        passed = passed and result.passed
        if rc.sweep_command == str(Command.verify_theorem):
            rows.append(min(result.rows, key=lambda r: r["margin"]))
        else:
            rows.extend(result.rows)
        Logger.log(f"Cell {i + 1}/{len(cells)} done")
    body = {"sweep_command": rc.sweep_command, "rows": rows}
    return CommandResult(_report(rc, body, passed), rows, columns or [], passed)


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    str(Command.chi): run_chi,
    str(Command.verify_theorem): run_verify_theorem,
    str(Command.verify_theorem2): run_verify_theorem2,
    str(Command.verify_decomposition): run_verify_decomposition,
    str(Command.additivity): run_additivity,
    str(Command.sweep): run_sweep,
    str(Command.check_channel): run_check_channel,
}


def run(rc: RunConfig) -> CommandResult:
    validate_run_config(rc)
    return COMMANDS[rc.command](rc)
