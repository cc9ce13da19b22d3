"""Zero-forcing cell associations for locally connected interference networks."""

from .closed_form import formula, gamma_d, pudof_downlink_zf, pudof_joint_zf_inner, pudof_uplink_zf_inner
from .model import CellAssociation, NetworkConfig, bs_neighbors, coverage, mt_neighbors, validate_association
from .oracle import OracleGuard, oracle_eta
from .schemes import build_scheme, evaluate_scheme
from .zf import DownlinkPlan, UplinkPlan, check_downlink, check_uplink, find_uplink_order

__all__ = [
    "CellAssociation", "DownlinkPlan", "NetworkConfig", "OracleGuard", "UplinkPlan",
    "build_scheme", "bs_neighbors", "check_downlink", "check_uplink", "coverage",
    "evaluate_scheme", "find_uplink_order", "formula", "gamma_d", "mt_neighbors",
    "oracle_eta", "pudof_downlink_zf", "pudof_joint_zf_inner", "pudof_uplink_zf_inner",
    "validate_association",
]
