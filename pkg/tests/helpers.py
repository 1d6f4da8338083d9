import warnings

from revival_lab import PacketSpec, TruncationWarning, gaussian_coefficients


def quiet_gaussian(spec):
    """Gaussian packet whose support is clipped at the model floor; the tail warning is expected."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return gaussian_coefficients(spec)


def box_packet(nbar=10, sigma=1.5):
    return quiet_gaussian(PacketSpec.around(nbar, sigma, floor=1))
