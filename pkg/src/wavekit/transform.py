"""Continuous wavelet transform, scalogram, and modulus maxima.

W(b, a) = (1/sqrt(a)) * integral f(t) conj(psi((t - b)/a)) dt, discretized by
the rectangle rule on the signal's own grid with zero extension outside the
sampled support:

    W[j][i] = (dt / sqrt(a_j)) * sum_k f_k conj(psi((t_k - b_i)/a_j))

Translations b_i sit at every sample position. Two routes compute the same
sum: cwt_direct convolves in the time domain, cwt_fft multiplies in the
frequency domain with the transfer function of the sampled scaled wavelet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ScaleTooFineError, TooFewScalesError
from .series import TimeSeries
from .wavelets import Wavelet, support_radius


@dataclass(frozen=True)
class ScaleGrid:
    """Logarithmically spaced analysis scales."""

    scales: np.ndarray
    voices_per_octave: float

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=np.float64)
        object.__setattr__(self, "scales", scales)
        if scales.size < 1 or not np.all(np.isfinite(scales)) or np.any(scales <= 0):
            raise ValueError("scales must be positive and finite")
        if scales.size > 1 and np.any(np.diff(scales) <= 0):
            raise ValueError("scales must be strictly increasing")

    @classmethod
    def log_spaced(cls, a_min: float, a_max: float, voices_per_octave: float = 8.0) -> "ScaleGrid":
        """Geometric grid a_min * 2^(j / voices) covering [a_min, a_max]."""
        if not (0 < a_min <= a_max):
            raise ValueError(f"need 0 < a_min <= a_max, got {a_min}, {a_max}")
        octaves = np.log2(a_max / a_min)
        count = int(np.floor(octaves * voices_per_octave + 1e-9)) + 1
        scales = a_min * 2.0 ** (np.arange(count) / voices_per_octave)
        return cls(scales=scales, voices_per_octave=float(voices_per_octave))

    @classmethod
    def with_count(cls, a_min: float, a_max: float, count: int) -> "ScaleGrid":
        """Exactly `count` log-spaced scales from a_min to a_max inclusive."""
        if count < 1:
            raise ValueError("count must be >= 1")
        if not (0 < a_min <= a_max):
            raise ValueError(f"need 0 < a_min <= a_max, got {a_min}, {a_max}")
        if count == 1:
            return cls(scales=np.array([a_min]), voices_per_octave=1.0)
        scales = np.geomspace(a_min, a_max, count)
        voices = (count - 1) / max(np.log2(a_max / a_min), 1e-300)
        return cls(scales=scales, voices_per_octave=float(voices))

    @classmethod
    def default_for(cls, f: TimeSeries, voices_per_octave: float = 8.0) -> "ScaleGrid":
        """Analysis default: from 2*dt up to a quarter of the record length."""
        return cls.log_spaced(2.0 * f.dt, f.n * f.dt / 4.0, voices_per_octave)

    @property
    def n_scales(self) -> int:
        return self.scales.size

    @property
    def a_min(self) -> float:
        return float(self.scales[0])

    @property
    def a_max(self) -> float:
        return float(self.scales[-1])


@dataclass(frozen=True)
class CwtMatrix:
    """CWT coefficients on a (scale, translation) grid plus cone-of-influence widths.

    cone_of_influence[j] is the number of boundary-affected samples at each
    end of row j: ceil(support_radius * a_j / dt) with the zero-extension
    convention. interior_mask(j) flags the trustworthy columns.
    """

    coefficients: np.ndarray
    scales: np.ndarray
    times: np.ndarray
    cone_of_influence: np.ndarray
    dt: float
    wavelet: Wavelet

    @property
    def n_scales(self) -> int:
        return self.scales.size

    @property
    def n_times(self) -> int:
        return self.times.size

    def interior_mask(self, j: int) -> np.ndarray:
        mask = np.zeros(self.n_times, dtype=bool)
        c = int(self.cone_of_influence[j])
        if c < self.n_times - c:
            mask[c:self.n_times - c] = True
        return mask


@dataclass(frozen=True)
class Scalogram:
    """Normalized energy density S(b, a) = |W(b, a)|^2 / a."""

    values: np.ndarray
    scales: np.ndarray
    times: np.ndarray


@dataclass(frozen=True)
class MaximaLine:
    """One chained ridge of modulus maxima, ordered fine to coarse."""

    scale_idx: np.ndarray
    time_idx: np.ndarray
    values: np.ndarray
    point_indices: np.ndarray

    def span_octaves(self, scales: np.ndarray) -> float:
        a = scales[self.scale_idx]
        return float(np.log2(a[-1] / a[0]))


@dataclass(frozen=True)
class MaximaSet:
    """Modulus maxima (i, j, |W|) and their chained lines."""

    time_idx: np.ndarray
    scale_idx: np.ndarray
    values: np.ndarray
    lines: tuple
    scales: np.ndarray
    times: np.ndarray

    @property
    def n_points(self) -> int:
        return self.time_idx.size


def _check_grid(f: TimeSeries, g: ScaleGrid) -> None:
    if g.a_min < 2.0 * f.dt * (1.0 - 1e-12):
        raise ScaleTooFineError(
            f"finest scale {g.a_min:g} is below 2*dt = {2 * f.dt:g}")


def _kernel(w: Wavelet, a: float, dt: float):
    """Sampled, conjugated wavelet at scale a: c_m = conj(psi(m dt / a)).

    Returns (c, m_lo) with offsets m = m_lo .. m_lo + len(c) - 1 covering the
    unit-scale support of the wavelet.
    """
    lo, hi = w.support
    m_lo = int(np.floor(lo * a / dt))
    m_hi = int(np.ceil(hi * a / dt))
    m = np.arange(m_lo, m_hi + 1)
    c = np.conj(w.psi(m * dt / a))
    return c, m_lo, m_hi


def _cone(f: TimeSeries, w: Wavelet, g: ScaleGrid) -> np.ndarray:
    return np.ceil(support_radius(w) * g.scales / f.dt).astype(np.int64)


def cwt_direct(f: TimeSeries, w: Wavelet, g: ScaleGrid) -> CwtMatrix:
    """Time-domain rectangle-rule CWT; the oracle route."""
    _check_grid(f, g)
    x = f.samples
    n = f.n
    dtype = np.complex128 if w.is_complex else np.float64
    out = np.empty((g.n_scales, n), dtype=dtype)
    for j, a in enumerate(g.scales):
        c, m_lo, m_hi = _kernel(w, a, f.dt)
        # W[i] = sum_m x[i+m] c[m] = convolve(x, reversed(c))[i + m_hi]
        row = np.convolve(x, c[::-1])
        out[j] = row[m_hi:m_hi + n] * (f.dt / np.sqrt(a))
    return CwtMatrix(coefficients=out, scales=g.scales.copy(), times=f.time_axis(),
                     cone_of_influence=_cone(f, w, g), dt=f.dt, wavelet=w)


def cwt_fft(f: TimeSeries, w: Wavelet, g: ScaleGrid) -> CwtMatrix:
    """FFT-accelerated CWT, identical contract to cwt_direct.

    Per scale the zero-padded signal spectrum is multiplied by the transfer
    function of the scaled wavelet (the DFT of the sampled kernel), which is
    the frequency-domain image of the same rectangle-rule sum.
    """
    _check_grid(f, g)
    x = f.samples
    n = f.n
    dtype = np.complex128 if w.is_complex else np.float64
    out = np.empty((g.n_scales, n), dtype=dtype)
    for j, a in enumerate(g.scales):
        c, m_lo, m_hi = _kernel(w, a, f.dt)
        klen = c.size
        size = 1 << int(np.ceil(np.log2(n + klen - 1)))
        if w.is_complex:
            spec = np.fft.fft(x, size) * np.fft.fft(c[::-1], size)
            row = np.fft.ifft(spec)
        else:
            spec = np.fft.rfft(x, size) * np.fft.rfft(c[::-1], size)
            row = np.fft.irfft(spec, size)
        out[j] = row[m_hi:m_hi + n] * (f.dt / np.sqrt(a))
    return CwtMatrix(coefficients=out, scales=g.scales.copy(), times=f.time_axis(),
                     cone_of_influence=_cone(f, w, g), dt=f.dt, wavelet=w)


def scalogram(c: CwtMatrix) -> Scalogram:
    """Energy density |W|^2 / a per Parseval-style normalization."""
    power = np.abs(c.coefficients) ** 2 / c.scales[:, None]
    return Scalogram(values=power, scales=c.scales, times=c.times)


def modulus_maxima(c: CwtMatrix, min_amplitude_fraction: float = 0.0) -> MaximaSet:
    """Local maxima of |W| along translation, chained across scales.

    A column i is a maximum when |W[j][i]| > |W[j][i-1]| and
    |W[j][i]| >= |W[j][i+1]| (leftmost point of a plateau wins) and clears
    min_amplitude_fraction of the row maximum. Maxima at adjacent scales are
    linked nearest-neighbor when their time offset is at most a_{j+1}/dt
    samples; unmatched maxima start new lines, unmatched lines terminate.
    Ridges converge as scale grows, so each maximum extends at most one
    line; a line beaten to its nearest coarse maximum ends there.
    """
    if not 0.0 <= min_amplitude_fraction <= 1.0:
        raise ValueError("min_amplitude_fraction must be in [0, 1]")
    mag = np.abs(c.coefficients)
    n_scales, n = mag.shape

    per_scale = []
    for j in range(n_scales):
        row = mag[j]
        is_max = np.zeros(n, dtype=bool)
        is_max[1:-1] = (row[1:-1] > row[:-2]) & (row[1:-1] >= row[2:])
        if min_amplitude_fraction > 0.0:
            is_max &= row >= min_amplitude_fraction * row.max()
        idx = np.nonzero(is_max)[0]
        per_scale.append((idx, row[idx]))

    time_idx = np.concatenate([p[0] for p in per_scale]) if per_scale else np.empty(0, np.int64)
    scale_idx = np.concatenate([np.full(p[0].size, j, dtype=np.int64)
                                for j, p in enumerate(per_scale)]) if per_scale else np.empty(0, np.int64)
    values = np.concatenate([p[1] for p in per_scale]) if per_scale else np.empty(0)

    # flat point index of the first maximum at each scale
    offsets = np.zeros(n_scales + 1, dtype=np.int64)
    for j, p in enumerate(per_scale):
        offsets[j + 1] = offsets[j] + p[0].size

    # chain fine -> coarse
    lines = []          # each: list of flat point indices
    line_of_head = {}   # time index at current scale -> line id
    for j in range(n_scales):
        idx, vals = per_scale[j]
        flat = offsets[j] + np.arange(idx.size)
        matched = {}
        if j > 0 and line_of_head:
            tol = c.scales[j] / c.dt
            heads = np.array(sorted(line_of_head.keys()), dtype=np.int64)
            # candidate pairs: each head against its flanking maxima
            cand = []
            for h in heads:
                pos = np.searchsorted(idx, h)
                for k in (pos - 1, pos):
                    if 0 <= k < idx.size:
                        d = abs(int(idx[k]) - int(h))
                        if d <= tol:
                            cand.append((d, int(idx[k]), int(h)))
            cand.sort()
            used_heads = set()
            for d, i_new, h in cand:
                if i_new in matched or h in used_heads:
                    continue
                matched[i_new] = line_of_head[h]
                used_heads.add(h)
        new_heads = {}
        for k in range(idx.size):
            i = int(idx[k])
            if i in matched:
                line_id = matched[i]
                lines[line_id].append(int(flat[k]))
            else:
                line_id = len(lines)
                lines.append([int(flat[k])])
            new_heads[i] = line_id
        line_of_head = new_heads

    built = []
    for pts in lines:
        p = np.asarray(pts, dtype=np.int64)
        built.append(MaximaLine(scale_idx=scale_idx[p], time_idx=time_idx[p],
                                values=values[p], point_indices=p))
    return MaximaSet(time_idx=time_idx, scale_idx=scale_idx, values=values,
                     lines=tuple(built), scales=c.scales, times=c.times)
