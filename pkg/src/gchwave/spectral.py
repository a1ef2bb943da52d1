"""Fourier operators on the periodic box [-L, L).

Everything here acts on real samples at the nodes x_j = -L + j*dx.  The
Helmholtz operator 1 - d^2/dx^2 and its inverse are diagonal in frequency
space; the inverse also has a direct real-space form (convolution with the
periodized kernel e^{-|x|}/2) which is kept as an independent route.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _fd_second_derivative(f: np.ndarray, h: float) -> np.ndarray:
    # 6th-order central stencil, periodic
    c = (1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90)
    out = np.zeros_like(f)
    for off, w in zip(range(-3, 4), c):
        out += w * np.roll(f, -off)
    return out / h**2


@dataclass(frozen=True)
class SpectralWorkspace:
    """Wavenumbers and Helmholtz symbol for an n-point grid on [-L, L)."""

    half_length: float
    n: int
    tolerance: float = 1e-12
    wavenumbers: np.ndarray = field(init=False, repr=False)
    helmholtz_symbol: np.ndarray = field(init=False, repr=False)
    _deriv_symbol: np.ndarray = field(init=False, repr=False)
    _dealias_mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n
        idx = np.fft.fftfreq(n, d=1.0 / n)  # signed integer mode numbers
        k = np.pi * idx / self.half_length
        dk = 1j * k
        if n % 2 == 0:
            dk[n // 2] = 0.0
        mask = np.abs(idx) < n / 3.0
        for name, arr in (("wavenumbers", k), ("helmholtz_symbol", 1.0 + k**2),
                          ("_deriv_symbol", dk), ("_dealias_mask", mask)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_grid(cls, grid) -> "SpectralWorkspace":
        return cls(grid.half_length, grid.n)

    @property
    def dx_(self) -> float:
        return 2.0 * self.half_length / self.n

    @property
    def nodes(self) -> np.ndarray:
        return -self.half_length + self.dx_ * np.arange(self.n)

    # -- differentiation -------------------------------------------------
    def dx(self, f: np.ndarray) -> np.ndarray:
        """Derivative of the trigonometric interpolant (Nyquist mode dropped)."""
        return np.fft.ifft(self._deriv_symbol * np.fft.fft(f)).real

    def dxx(self, f: np.ndarray) -> np.ndarray:
        return np.fft.ifft(-(self.wavenumbers**2) * np.fft.fft(f)).real

    # -- Helmholtz pair ---------------------------------------------------
    def helmholtz_apply(self, u: np.ndarray) -> np.ndarray:
        """m = u - u_xx."""
        return np.fft.ifft(self.helmholtz_symbol * np.fft.fft(u)).real

    def helmholtz_invert(self, m: np.ndarray) -> np.ndarray:
        """u = (1 - d^2/dx^2)^{-1} m, by division of the symbol."""
        return np.fft.ifft(np.fft.fft(m) / self.helmholtz_symbol).real

    def inverse_helmholtz_dx(self, f: np.ndarray) -> np.ndarray:
        """(1 - d^2/dx^2)^{-1} d/dx f in a single transform pair."""
        return np.fft.ifft(self._deriv_symbol / self.helmholtz_symbol * np.fft.fft(f)).real

    def green_kernel(self) -> np.ndarray:
        """Samples of the periodized kernel sum_j e^{-|x + 2jL|}/2 at offsets j*dx."""
        L = self.half_length
        s = self.dx_ * np.arange(self.n)
        s = np.where(s > L, 2 * L - s, s)  # distance on the circle
        return np.cosh(s - L) / (2.0 * np.sinh(L))

    def green_convolve(self, m: np.ndarray) -> np.ndarray:
        """Real-space quadrature of the periodized kernel against m.

        Trapezoid rule over one period with Euler-Maclaurin end corrections at
        the kernel's kink (odd derivatives of the kernel jump by -1 there);
        the derivatives of m needed by the corrections come from a 6th-order
        finite-difference stencil, so no Fourier transform is involved.
        """
        m = np.asarray(m, dtype=float)
        n, h = self.n, self.dx_
        g = self.green_kernel()
        idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        trap = h * (g[idx] @ m)
        m2 = _fd_second_derivative(m, h)
        m4 = _fd_second_derivative(m2, h)
        return (trap - h**2 / 12.0 * m + h**4 / 720.0 * (3.0 * m2 + m)
                - h**6 / 30240.0 * (5.0 * m4 + 10.0 * m2 + m))

    # -- dealiasing / interpolation --------------------------------------
    def dealias(self, f: np.ndarray) -> np.ndarray:
        """Zero every mode with |j| >= n/3 (2/3 rule)."""
        return np.fft.ifft(np.where(self._dealias_mask, np.fft.fft(f), 0.0)).real

    def interpolate(self, f: np.ndarray, points, derivative: bool = False) -> np.ndarray:
        """Evaluate the trigonometric interpolant of f (or its derivative) off-grid."""
        fh = np.fft.fft(f)
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        phase = np.exp(1j * np.outer(pts + self.half_length, self.wavenumbers))
        if derivative:
            fh = self._deriv_symbol * fh
        return (phase @ fh).real / self.n

    def interpolate_pair(self, f: np.ndarray, points) -> tuple[np.ndarray, np.ndarray]:
        """Values and derivatives of the interpolant of f at the same points."""
        fh = np.fft.fft(f)
        pts = np.atleast_1d(np.asarray(points, dtype=float))
        phase = np.exp(1j * np.outer(pts + self.half_length, self.wavenumbers))
        vals = (phase @ fh).real / self.n
        ders = (phase @ (self._deriv_symbol * fh)).real / self.n
        return vals, ders

    def spectral_tail(self, f: np.ndarray, fraction: float = 1 / 3) -> float:
        """Share of the L2 spectrum carried by the top `fraction` of resolved modes."""
        fh = np.abs(np.fft.fft(f)) ** 2
        idx = np.abs(np.fft.fftfreq(self.n, d=1.0 / self.n))
        total = fh.sum()
        if total == 0.0:
            return 0.0
        return float(fh[idx >= (1 - fraction) * self.n / 2].sum() / total)
