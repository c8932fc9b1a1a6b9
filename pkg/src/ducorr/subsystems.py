"""Spatiotemporal subsystem bookkeeping on the doubled lattice.

The operator state of U_t lives on 2L qubits: L "output" sites (the
time-t layer) followed by L "input" sites (the time-0 layer).  Tensor
axis k < L is output site k+1, axis L+k is input site k+1, matching the
amplitude layout (output configuration major, input minor).
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

LAYER_IN = "in"
LAYER_OUT = "out"


@dataclass(frozen=True)
class SubsystemSpec:
    """An ordered set of sites on one layer of the doubled lattice.

    ``parity`` is a reporting tag ("even"/"odd" start); it does not
    affect any computation.
    """

    sites: tuple
    layer: str
    parity: str = None

    def __post_init__(self):
        if self.layer not in (LAYER_IN, LAYER_OUT):
            raise ConfigurationError(f"layer must be 'in' or 'out', got {self.layer!r}")
        object.__setattr__(self, "sites", tuple(int(s) for s in self.sites))
        if len(set(self.sites)) != len(self.sites):
            raise ConfigurationError("duplicate sites in subsystem")

    def __len__(self):
        return len(self.sites)

    def axes(self, L):
        """Tensor axes of this subsystem on the 2L-axis doubled state."""
        for s in self.sites:
            if not 1 <= s <= L:
                raise ConfigurationError(f"site {s} outside 1..{L}")
        off = 0 if self.layer == LAYER_OUT else L
        return [off + s - 1 for s in self.sites]

    def complement(self, L):
        """All other sites of the same layer."""
        rest = tuple(s for s in range(1, L + 1) if s not in self.sites)
        return SubsystemSpec(rest, self.layer)


def input_sites(sites, parity=None):
    return SubsystemSpec(tuple(np.atleast_1d(sites)), LAYER_IN, parity)


def output_sites(sites, parity=None):
    return SubsystemSpec(tuple(np.atleast_1d(sites)), LAYER_OUT, parity)


def collect_axes(specs, L):
    """Sorted axis list of one spec or an iterable of specs; overlap is an error."""
    if isinstance(specs, SubsystemSpec):
        specs = [specs]
    axes = []
    for sp in specs:
        axes.extend(sp.axes(L))
    if len(set(axes)) != len(axes):
        raise ConfigurationError("overlapping subsystem specs")
    return sorted(axes)


def _mod_site(s, L):
    return (s - 1) % L + 1


def local_pair(L, t, d, i_x=None):
    """Single-site X (input) and Y (output) with i_Y = i_X + 2t + 2d.

    With the odd-bonds-first layer convention the tight right-moving ray
    emanates from odd sites, so i_X defaults to an odd site; integer d
    keeps i_Y on the same parity ("even-even" placement in the usual
    labelling), half-integer d lands on the opposite parity.
    """
    if i_x is None:
        i_x = 1
    shift = 2 * t + 2 * d
    if abs(shift - round(shift)) > 1e-12:
        raise ConfigurationError(f"2t + 2d must be an integer, got {shift}")
    i_y = _mod_site(i_x + int(round(shift)), L)
    return input_sites([i_x]), output_sites([i_y])


def fits_lightcone(L, t, d):
    """True when the causal cone of the comparison fits without wrapping."""
    return 2 * t + 2 * abs(d) + 2 <= L


def _contiguous(start, length, L):
    sites = tuple(_mod_site(start + k, L) for k in range(length))
    if len(set(sites)) != length:
        raise ConfigurationError("subsystem wraps onto itself")
    return sites


def macro_pair(L, t, d, i_x=None, far_gap=None, split=None):
    """Macroscopic X (input) and Y (output): X ends at i_X, Y starts at
    i_Y = i_X + 2t + 2d, leaving 2(t+d)-1 sites between them.

    On a ring, the second (far) gap between Y's right end and X's left
    end matters at finite L: the closed-form jump laws hold per instance
    only when the far side is itself causally clean.  The default
    placement, fixed by direct measurement against the exact identities,
    uses a far gap of 2t-1 sites with odd |X|, |Y| (split as evenly as
    the parity allows), except in the marginal case t = -d where the
    surviving network has zero strip length and the clean choice is a
    far gap of one site with even subsystem sizes.  Passing ``far_gap``
    and/or ``split`` (= |X|) overrides the defaults; such geometries are
    computed but carry no exactness guarantee.
    """
    if i_x is None:
        i_x = 1
    marginal = d <= 0 and t == -d
    if far_gap is None:
        far_gap = 1 if marginal else 2 * t - 1
    total = L - 2 * (t + d) + 1 - far_gap
    if total < 2:
        raise ConfigurationError(f"no room for macroscopic X, Y at L={L}, t={t}, d={d}")
    if split is None:
        if marginal:
            nx = total // 2 - 1
            if nx % 2:
                nx -= 1
        else:
            nx = total // 2
            if nx % 2 == 0:
                nx += 1
    else:
        nx = int(split)
    ny = total - nx
    if nx < 1 or ny < 1:
        raise ConfigurationError(f"invalid split |X|={nx}, |Y|={ny}")
    i_y = _mod_site(i_x + 2 * (t + d), L)
    x_sites = _contiguous(i_x - nx + 1, nx, L)
    y_sites = _contiguous(i_y, ny, L)
    return input_sites(x_sites), output_sites(y_sites)


def macro_fits(L, t, d):
    """True when the default macroscopic placement exists and the causal
    structure (near strip plus far closure) fits on the ring."""
    try:
        macro_pair(L, t, d)
    except ConfigurationError:
        return False
    return 2 * t + 2 * abs(d) + 2 <= L
