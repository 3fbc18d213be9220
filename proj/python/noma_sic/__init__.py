"""Two-user uplink NOMA with dynamic SIC: closed-form BER, Gaussian fits and Monte Carlo."""

from ._noma_sic import (
    ConfigError,
    Scenario,
    conditioned_real_part,
    ebn0_to_n0,
    fit_mixture,
    order_probability,
    ordered_gain_pdf,
    pep_second_correct,
    q_chiani,
    q_exact,
    run_config,
    simulate,
    theory_ber,
    theory_fixed,
)


def db_to_linear(x):
    return 10.0 ** (x / 10.0)


def normalized_powers(p1_db, p2_db):
    """Linear power shares (p1, p2) summing to one."""
    p1, p2 = db_to_linear(p1_db), db_to_linear(p2_db)
    return p1 / (p1 + p2), p2 / (p1 + p2)


__all__ = [
    "ConfigError",
    "Scenario",
    "conditioned_real_part",
    "db_to_linear",
    "ebn0_to_n0",
    "fit_mixture",
    "normalized_powers",
    "order_probability",
    "ordered_gain_pdf",
    "pep_second_correct",
    "q_chiani",
    "q_exact",
    "run_config",
    "simulate",
    "theory_ber",
    "theory_fixed",
]
