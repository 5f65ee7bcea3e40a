"""adjcheck: exact verification of adjunction and duality structure on
module categories of finite-dimensional cocommutative Hopf algebras."""

from .battery import BATTERIES, BatteryConfig, build_context, emit_report, run_battery
from .report import CheckEntry, CheckReport, validate_report_dict

__version__ = "0.1.0"

__all__ = [
    "BATTERIES",
    "BatteryConfig",
    "CheckEntry",
    "CheckReport",
    "build_context",
    "emit_report",
    "run_battery",
    "validate_report_dict",
    "__version__",
]
