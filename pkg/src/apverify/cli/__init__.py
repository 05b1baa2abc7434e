"""Pipeline orchestration, assumption ledger and the command line."""

from .ledger import AssumptionLedger, LedgerEntry, default_ledger
from .pipeline import Config, Pipeline, exit_code, verify_all

__all__ = ["AssumptionLedger", "Config", "LedgerEntry", "Pipeline", "default_ledger",
           "exit_code", "verify_all"]
