"""The compiled kernels and their pure-Python twins must agree exactly."""

from array import array

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import nfas
from sepreg import _pykernels, kernels

try:
    from sepreg import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None:
        assert kernels.BACKEND == "cython"


@needs_ext
@settings(max_examples=200, deadline=None)
@given(nfas(max_states=6, alphabet="abc"), st.integers(0, 7))
def test_reach_and_scc_agree(a, allowed):
    offsets, syms, dsts = a.csr()
    n = a.state_count
    assert _ckernels.reach_masks(n, offsets, syms, dsts, allowed) == _pykernels.reach_masks(
        n, offsets, syms, dsts, allowed
    )
    assert _ckernels.scc(n, offsets, syms, dsts, allowed) == _pykernels.scc(n, offsets, syms, dsts, allowed)


def test_reach_masks_semantics():
    # 0 -a-> 1 -b-> 2
    offsets = array("i", [0, 1, 2, 2])
    syms = array("i", [0, 1])
    dsts = array("i", [1, 2])
    assert _pykernels.reach_masks(3, offsets, syms, dsts, 0b11) == [0b111, 0b110, 0b100]
    assert _pykernels.reach_masks(3, offsets, syms, dsts, 0b01) == [0b011, 0b010, 0b100]


def test_scc_semantics():
    # 0 <-> 1 on a/b, 1 -c-> 2
    offsets = array("i", [0, 1, 3, 3])
    syms = array("i", [0, 1, 2])
    dsts = array("i", [1, 0, 2])
    comp, alpha = _pykernels.scc(3, offsets, syms, dsts, 0b111)
    assert comp[0] == comp[1] != comp[2]
    assert alpha[comp[0]] == 0b011
    assert alpha[comp[2]] == 0


def _ext_table(alphabet_size, n):
    words = [()]
    for length in range(1, n + 1):
        words += [w + (a,) for w in words if len(w) == length - 1 for a in range(alphabet_size)]
    index = {w: i for i, w in enumerate(words)}
    ext = [-1] * (len(words) * alphabet_size)
    for i, w in enumerate(words):
        if len(w) < n:
            for a in range(alphabet_size):
                ext[i * alphabet_size + a] = index[w + (a,)]
    return len(words), array("i", ext)


@needs_ext
@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8), st.integers(0, 3))
def test_profile_extend_agrees(word, n):
    count, ext = _ext_table(3, n)
    nbytes = (count + 7) // 8
    p_c = p_py = (1).to_bytes(nbytes, "little")
    for a in word:
        p_c = _ckernels.profile_extend(p_c, a, ext, 3)
        p_py = _pykernels.profile_extend(p_py, a, ext, 3)
        assert p_c == p_py


def test_profile_extend_semantics():
    count, ext = _ext_table(2, 2)  # words: e, a, b, aa, ab, ba, bb
    p = (1).to_bytes(1, "little")
    p = _pykernels.profile_extend(p, 0, ext, 2)
    assert int.from_bytes(p, "little") == 0b11
    p = _pykernels.profile_extend(p, 1, ext, 2)
    assert int.from_bytes(p, "little") == 0b10111
