"""Distance-based link model supplying fd/rd to everything downstream."""


def link_delivery_probability(distance: float, radio_range: float) -> float:
    """
    Perfect up to half the radio range, linear decay to 0 at the range edge, 0 beyond.
    Monotone non-increasing in distance and bounded in [0, 1].
    """
    if radio_range <= 0:
        raise ValueError(f"radio_range must be positive, got {radio_range!r}")
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance!r}")
    knee = 0.5 * radio_range
    if distance <= knee:
        return 1.0
    if distance >= radio_range:
        return 0.0
    return (radio_range - distance) / (radio_range - knee)
