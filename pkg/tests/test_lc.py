import numpy as np
import pytest

from octupolar import (
    DirectorGradient, DistortionCharacteristics, FrankConstants,
    decompose_gradient, eval_potential, lc_octupolar_potential,
    lc_octupolar_tensor, oseen_frank, reconstruct_gradient,
)

rng = np.random.default_rng(13)
E3 = np.array([0.0, 0.0, 1.0])


def random_gradient():
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    g = rng.normal(size=(3, 3))
    g -= np.outer(n, n @ g)
    return DirectorGradient(g=g, n=n)


class TestDecompose:
    def test_pure_splay(self):
        g = 1.0 * (np.eye(3) - np.outer(E3, E3))  # S/2 with S = 2
        dc = decompose_gradient(DirectorGradient(g=g, n=E3))
        assert abs(dc.splay - 2.0) < 1e-14
        assert abs(dc.twist) < 1e-14
        assert abs(dc.b1) < 1e-14 and abs(dc.b2) < 1e-14
        assert dc.q < 1e-14
        assert dc.frame_arbitrary

    def test_pure_bend(self):
        e1 = np.array([1.0, 0.0, 0.0])
        g = -1.0 * np.outer(e1, E3)
        dc = decompose_gradient(DirectorGradient(g=g, n=E3))
        assert abs(dc.splay) < 1e-14 and abs(dc.twist) < 1e-14
        assert abs(dc.bend_norm - 1.0) < 1e-14
        assert dc.q < 1e-14

    def test_pure_biaxial_splay(self):
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.array([0.0, 1.0, 0.0])
        g = 0.7 * (np.outer(e1, e1) - np.outer(e2, e2))
        dc = decompose_gradient(DirectorGradient(g=g, n=E3))
        assert abs(dc.q - 0.7) < 1e-14
        assert abs(dc.splay) < 1e-14 and abs(dc.twist) < 1e-14
        assert dc.bend_norm < 1e-14

    def test_pure_twist(self):
        dc = DistortionCharacteristics(
            splay=0.0, twist=1.0, b1=0.0, b2=0.0, q=0.0,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        g = reconstruct_gradient(dc).g
        expect = 0.5 * (np.outer([0, 1.0, 0], [1.0, 0, 0]) - np.outer([1.0, 0, 0], [0, 1.0, 0]))
        assert np.allclose(g, expect, atol=1e-14)

    def test_q_identity(self):
        for _ in range(200):
            dg = random_gradient()
            dc = decompose_gradient(dg)
            lhs = 2.0 * dc.q ** 2
            rhs = np.einsum("ij,ji->", dg.g, dg.g) + 0.5 * dc.twist ** 2 - 0.5 * dc.splay ** 2
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))

    def test_frame_is_right_handed(self):
        dg = random_gradient()
        dc = decompose_gradient(dg)
        assert np.allclose(np.cross(dc.n1, dc.n2), dc.n, atol=1e-12)

    def test_constraint_violation_rejected(self):
        with pytest.raises(ValueError):
            DirectorGradient(g=np.eye(3), n=E3)
        with pytest.raises(ValueError):
            DirectorGradient(g=np.zeros((3, 3)), n=np.array([0.0, 0.0, 1.1]))


class TestReconstruct:
    def test_round_trip(self):
        for _ in range(200):
            dg = random_gradient()
            dc = decompose_gradient(dg)
            back = reconstruct_gradient(dc)
            assert np.max(np.abs(back.g - dg.g)) < 1e-12
            assert np.allclose(back.n, dg.n)

    def test_frame_sign_flip_invariance(self):
        dg = random_gradient()
        dc = decompose_gradient(dg)
        flipped = DistortionCharacteristics(
            splay=dc.splay, twist=dc.twist, b1=dc.b1, b2=dc.b2, q=dc.q,
            n1=-dc.n1, n2=-dc.n2, n=dc.n)
        # flipping both frame legs preserves the quadratic terms but flips
        # the bend components; re-expressing b keeps the gradient fixed
        flipped2 = DistortionCharacteristics(
            splay=dc.splay, twist=dc.twist, b1=-dc.b1, b2=-dc.b2, q=dc.q,
            n1=-dc.n1, n2=-dc.n2, n=dc.n)
        assert np.max(np.abs(reconstruct_gradient(flipped2).g
                             - reconstruct_gradient(dc).g)) < 1e-13
        if dc.bend_norm > 1e-9:
            assert np.max(np.abs(reconstruct_gradient(flipped).g
                                 - reconstruct_gradient(dc).g)) > 1e-9

    def test_bad_frame_rejected(self):
        dc = DistortionCharacteristics(
            splay=0.0, twist=0.0, b1=0.0, b2=0.0, q=0.0,
            n1=np.array([1.0, 0, 0]), n2=np.array([0.9, 0.1, 0]), n=E3)
        with pytest.raises(ValueError):
            reconstruct_gradient(dc)


class TestOseenFrank:
    def test_pure_twist_energy(self):
        dc = DistortionCharacteristics(
            splay=0.0, twist=1.0, b1=0.0, b2=0.0, q=0.0,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        wc, wm, _ = oseen_frank(dc, FrankConstants(0.0, 1.0, 0.0, 0.0))
        assert abs(wc - 0.5) < 1e-14
        assert abs(wm - 0.5) < 1e-14

    def test_pure_octupolar_splay_energy(self):
        dc = DistortionCharacteristics(
            splay=0.0, twist=0.0, b1=0.0, b2=0.0, q=0.8,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        k24 = 0.7
        wc, wm, _ = oseen_frank(dc, FrankConstants(k24, k24, 0.0, k24))
        assert abs(wm - 2 * k24 * 0.8 ** 2) < 1e-14
        assert abs(wc - wm) < 1e-14

    def test_ericksen_violation(self):
        dc = decompose_gradient(random_gradient())
        _, _, ok = oseen_frank(dc, FrankConstants(1.0, 1.0, 1.0, 2.0))
        assert not ok
        _, _, ok2 = oseen_frank(dc, FrankConstants(1.0, 1.0, 1.0, 0.5))
        assert ok2

    def test_equivalence_random(self):
        for _ in range(1000):
            dc = decompose_gradient(random_gradient())
            k = FrankConstants(*rng.uniform(0.0, 3.0, 4))
            wc, wm, _ = oseen_frank(dc, k)
            assert abs(wc - wm) <= 1e-12 * max(1.0, abs(wc))


class TestPotential:
    def test_pure_octupolar_splay_maxima(self):
        q = 0.8
        dc = DistortionCharacteristics(
            splay=0.0, twist=0.0, b1=0.0, b2=0.0, q=q,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        val = 2 * q / (3 * np.sqrt(3))
        for x in ([np.sqrt(2 / 3), 0, 1 / np.sqrt(3)],
                  [-np.sqrt(2 / 3), 0, 1 / np.sqrt(3)],
                  [0, np.sqrt(2 / 3), -1 / np.sqrt(3)],
                  [0, -np.sqrt(2 / 3), -1 / np.sqrt(3)]):
            assert abs(lc_octupolar_potential(dc, x) - val) < 1e-10

    def test_pure_bend_lobes(self):
        b = 1.3
        dc = DistortionCharacteristics(
            splay=0.0, twist=0.0, b1=b, b2=0.0, q=0.0,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        big = 16 * b / (15 * np.sqrt(15))
        for sign in (1.0, -1.0):
            x = np.array([-2.0, 0.0, sign * np.sqrt(11.0)]) / np.sqrt(15.0)
            assert abs(lc_octupolar_potential(dc, x) - big) < 1e-10
        assert abs(lc_octupolar_potential(dc, [1.0, 0, 0]) - b / 5) < 1e-10

    def test_pure_splay_form(self):
        s = 1.7
        dc = DistortionCharacteristics(
            splay=s, twist=0.0, b1=0.0, b2=0.0, q=0.0,
            n1=np.array([1.0, 0, 0]), n2=np.array([0, 1.0, 0]), n=E3)
        for _ in range(20):
            x = rng.normal(size=3)
            x /= np.linalg.norm(x)
            expect = (s / 10) * (3 * x[0] ** 2 * x[2] + 3 * x[1] ** 2 * x[2] - 2 * x[2] ** 3)
            assert abs(lc_octupolar_potential(dc, x) - expect) < 1e-12

    def test_twist_blindness(self):
        dc = decompose_gradient(random_gradient())
        shifted = DistortionCharacteristics(
            splay=dc.splay, twist=dc.twist + 1.7, b1=dc.b1, b2=dc.b2, q=dc.q,
            n1=dc.n1, n2=dc.n2, n=dc.n)
        for _ in range(20):
            x = rng.normal(size=3)
            x /= np.linalg.norm(x)
            assert lc_octupolar_potential(dc, x) == lc_octupolar_potential(shifted, x)

    def test_matches_tensor_route(self):
        for _ in range(5):
            dg = random_gradient()
            dc = decompose_gradient(dg)
            t = lc_octupolar_tensor(dc)
            frame = np.stack([dc.n1, dc.n2, dc.n])
            for _ in range(20):
                x = rng.normal(size=3)
                x /= np.linalg.norm(x)
                assert abs(lc_octupolar_potential(dc, frame @ x)
                           - eval_potential(t, x)) < 1e-12

    def test_nematic_symmetry(self):
        dg = random_gradient()
        t1 = lc_octupolar_tensor(decompose_gradient(dg))
        dg2 = DirectorGradient(g=-dg.g, n=-dg.n)
        t2 = lc_octupolar_tensor(decompose_gradient(dg2))
        assert np.max(np.abs(t1.array - t2.array)) < 1e-12

    def test_homogeneous_degree_three(self):
        dc = decompose_gradient(random_gradient())
        x = rng.normal(size=3)
        assert abs(lc_octupolar_potential(dc, 2.0 * x)
                   - 8.0 * lc_octupolar_potential(dc, x)) < 1e-11
