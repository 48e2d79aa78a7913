import numpy as np


def simulate_link_delivery(prr_true: float, rng: np.random.Generator) -> bool:
    """One Bernoulli draw of a transmission over a link whose
    ground-truth reception ratio is ``prr_true``"""
    if not 0.0 <= prr_true <= 1.0:
        raise ValueError(f"A reception ratio must lie in [0, 1], got {prr_true}")
    return bool(rng.random() < prr_true)
