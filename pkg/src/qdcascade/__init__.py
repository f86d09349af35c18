"""Photon-number entanglement from a two-pulse biexciton-exciton cascade.

Build the four-mode entangled state produced by sequentially exciting a
three-level emitter, quantify its correlation structure (mutual
information, secret rates, negativity), and validate the closed-form
branch probabilities against independent dynamics oracles.
"""

from .cascade import (
    Amplitudes,
    DecayParams,
    ModeLabel,
    amplitudes,
    apply_second_pulse,
    complete_late_decay,
    dephased_density,
    early_state,
    final_state,
    ghz_fidelity,
    ghz_state,
)
from .entanglement import (
    Channel,
    EveSplit,
    average_mutual_information,
    channel_by_id,
    conditional_mutual_information,
    enumerate_channels,
    mutual_information,
    negativity,
)
from .oracle import (
    PatternCounts,
    Populations,
    monte_carlo_patterns,
    rate_equation_populations,
)

__version__ = "0.1.0"

__all__ = [
    "Amplitudes",
    "Channel",
    "DecayParams",
    "EveSplit",
    "ModeLabel",
    "PatternCounts",
    "Populations",
    "amplitudes",
    "apply_second_pulse",
    "average_mutual_information",
    "channel_by_id",
    "complete_late_decay",
    "conditional_mutual_information",
    "dephased_density",
    "early_state",
    "enumerate_channels",
    "final_state",
    "ghz_fidelity",
    "ghz_state",
    "monte_carlo_patterns",
    "mutual_information",
    "negativity",
    "rate_equation_populations",
]
