from .chiestimate import ChiEstimate
from .reports import (
    TheoremReport,
    DecompositionReport,
    AdditivityReport,
    ChiReport,
)
from .runconfig import RunConfig, CommandResult
