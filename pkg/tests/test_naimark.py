import numpy as np
import pytest

from polyball.fock import FockTruncation, creation_matrix
from polyball.naimark import (
    GeneratorError,
    KernelNotPSDError,
    NaimarkDilation,
    dilation_verify,
    kernel_from_generator,
    kernel_from_isometries,
    kernel_is_psd,
    naimark_dilate,
)
from polyball.sampling import random_non_psd_kernel, random_psd_kernel
from polyball.words import identity_multiword, multiword, multiwords_up_to_total


def delta_generator(n, e=1):
    g = identity_multiword(n)
    return {(g, g): np.eye(e)}


def rho_generator(rho, max_len):
    g = identity_multiword([1])
    gen = {}
    for m in range(2 * max_len + 1):
        w = multiword([[1] * m], [1])
        gen[(w, g)] = np.array([[rho ** m]])
        gen[(g, w)] = np.array([[rho ** m]])
    return gen


def test_delta_kernel_table():
    k = kernel_from_generator("left", delta_generator([1]), 4,
                              default=np.zeros((1, 1)))
    for m in range(5):
        for m2 in range(5):
            got = k.value(multiword([[1] * m], [1]), multiword([[1] * m2], [1]))[0, 0]
            assert got == (1.0 if m == m2 else 0.0)


def test_rho_kernel_structure():
    k = kernel_from_generator("left", rho_generator(0.6, 5), 5)
    for m in range(6):
        for m2 in range(6):
            got = k.value(multiword([[1] * m], [1]), multiword([[1] * m2], [1]))[0, 0]
            assert abs(got - 0.6 ** abs(m - m2)) < 1e-14


def test_generator_validation():
    g = identity_multiword([1])
    w = multiword([[1]], [1])
    with pytest.raises(GeneratorError):
        kernel_from_generator("left", {(g, g): 2 * np.eye(1)}, 2,
                              default=np.zeros((1, 1)))
    with pytest.raises(GeneratorError):
        # missing adjoint partner
        kernel_from_generator("left", {(g, g): np.eye(1), (w, g): np.eye(1)}, 2,
                              default=np.zeros((1, 1)))
    with pytest.raises(GeneratorError):
        # non-Hermitian pairing
        kernel_from_generator(
            "left",
            {(g, g): np.eye(1), (w, g): [[1.0j]], (g, w): [[1.0j]]},
            2,
            default=np.zeros((1, 1)),
        )
    with pytest.raises(GeneratorError):
        # missing value without a default
        kernel_from_generator("left", delta_generator([1]), 2)


def test_psd_reports():
    k = kernel_from_generator("left", delta_generator([1]), 4,
                              default=np.zeros((1, 1)))
    rep = kernel_is_psd(k)
    assert rep.psd and abs(rep.min_eig - 1.0) < 1e-14

    k = kernel_from_generator("left", rho_generator(0.6, 5), 5)
    assert kernel_is_psd(k).psd

    # contractivity violation: the principal 2x2 block [[1, 2], [2, 1]]
    g = identity_multiword([1])
    w = multiword([[1]], [1])
    gen = {(g, g): np.eye(1), (w, g): [[2.0]], (g, w): [[2.0]]}
    k = kernel_from_generator("left", gen, 2, default=np.zeros((1, 1)))
    rep = kernel_is_psd(k)
    assert not rep.psd and rep.min_eig <= -1.0 + 1e-12


def test_delta_dilation_is_truncated_shift():
    k = kernel_from_generator("left", delta_generator([1]), 4,
                              default=np.zeros((1, 1)))
    d = naimark_dilate(k)
    assert d.space_dim == 5
    assert d.window_len == 3
    rep = dilation_verify(d, k)
    assert rep.max_defect < 1e-12 and rep.minimal
    # reproduction on the window against the explicit shift oracle
    shift = np.zeros((5, 5))
    for m in range(4):
        shift[m + 1, m] = 1.0
    for m in range(4):
        for m2 in range(4):
            want = (np.linalg.matrix_power(shift, m).T @ np.linalg.matrix_power(shift, m2))[0, 0]
            got = d.reproduce(multiword([[1] * m], [1]), multiword([[1] * m2], [1]))[0, 0]
            assert abs(got - want) < 1e-12


def test_rho_dilation_reproduces():
    k = kernel_from_generator("left", rho_generator(0.6, 5), 5)
    d = naimark_dilate(k)
    rep = dilation_verify(d, k)
    assert rep.reproduction_error < 1e-9
    assert rep.isometry_defect < 1e-9
    assert rep.minimal


def test_commuting_shifts_dilation():
    t = FockTruncation([1, 1], [6, 6])
    v = [[creation_matrix(t, "left", 1, 1)], [creation_matrix(t, "left", 2, 1)]]
    e = np.zeros((t.dim, 1))
    e[0, 0] = 1.0
    k = kernel_from_isometries("left", v, e, 3)
    # vacuum compression of commuting shifts is the delta kernel
    kd = kernel_from_generator("left", delta_generator([1, 1]), 3,
                               default=np.zeros((1, 1)))
    assert k.max_difference(kd) < 1e-14
    d = naimark_dilate(k)
    rep = dilation_verify(d, k)
    assert rep.commutator_defect < 1e-9
    assert rep.reproduction_error < 1e-9


def test_random_psd_kernels_dilate(rng):
    for side in ("left", "right"):
        for shape in ((2,), (2, 1)):
            k = random_psd_kernel(rng, side, shape, 2, 3)
            assert kernel_is_psd(k).psd
            d = naimark_dilate(k)
            rep = dilation_verify(d, k)
            assert rep.reproduction_error < 1e-8, (side, shape)
            assert rep.isometry_defect < 1e-9
            assert rep.commutator_defect < 1e-9
            assert rep.minimal


def test_non_psd_refused(rng):
    k = random_non_psd_kernel(rng, "left", (2, 1), 2, 3)
    assert not kernel_is_psd(k).psd
    with pytest.raises(KernelNotPSDError):
        naimark_dilate(k)


def test_right_kernel_duality(rng):
    """Dilating a right kernel through reversal reproduces the original
    table: the defect report checks Gamma(s~, w~) = P V_s* V_w P."""
    k = random_psd_kernel(rng, "right", (2, 1), 2, 3)
    d = naimark_dilate(k)
    rep = dilation_verify(d, k)
    assert rep.reproduction_error < 1e-9
    # and it coincides with dilating the reversed left kernel directly
    kl = k.reversed()
    dl = naimark_dilate(kl)
    repl = dilation_verify(dl, kl)
    assert repl.reproduction_error < 1e-9
    for s in multiwords_up_to_total(k.n, 2):
        for w in multiwords_up_to_total(k.n, 2):
            np.testing.assert_allclose(
                d.reproduce(s, w), dl.reproduce(s, w), atol=1e-9
            )


def test_nonminimal_dilation_detected():
    k = kernel_from_generator("left", delta_generator([1]), 3,
                              default=np.zeros((1, 1)))
    d = naimark_dilate(k)
    pad = d.space_dim + 1
    grown = NaimarkDilation(
        side=d.side,
        n=d.n,
        e_dim=d.e_dim,
        space_dim=pad,
        isometries=[[np.pad(m, ((0, 1), (0, 1))) for m in row] for row in d.isometries],
        embedding=np.pad(d.embedding, ((0, 1), (0, 0))),
        window_len=d.window_len,
        monomials=d.monomials,
        frame=np.pad(d.frame, ((0, 1), (0, 0))),
    )
    rep = dilation_verify(grown, k)
    assert not rep.minimal and rep.dimension_gap == 1


def test_minimal_dilations_unitarily_equivalent(rng):
    """Two independently built minimal dilations of one kernel are related by
    a unitary matched on the monomial frames."""
    k = random_psd_kernel(rng, "left", (2,), 1, 3)
    d1 = naimark_dilate(k)
    # second construction: permute the Gram before factoring
    g = k.gram()
    m = g.shape[0]
    perm = np.arange(m)[::-1]
    gp = g[np.ix_(perm, perm)]
    lam, u = np.linalg.eigh(0.5 * (gp + gp.conj().T))
    keep = lam > 1e-10 * max(lam[-1], 1.0)
    frame_p = np.sqrt(lam[keep])[:, None] * u[:, keep].conj().T
    frame2 = np.zeros_like(frame_p)
    frame2[:, perm] = frame_p
    w = frame2 @ np.linalg.pinv(d1.frame)
    assert np.abs(w.conj().T @ w - np.eye(d1.space_dim)).max() < 1e-8
    np.testing.assert_allclose(w @ d1.frame, frame2, atol=1e-8)
