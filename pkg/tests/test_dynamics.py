import cmath
import math

import numpy as np
import pytest

from spineq.dynamics import (BlochState, bloch_propagate,
                             bloch_vector_path, constant_field_propagator,
                             evolution_constant_direction, evolution_from_q,
                             field_from_q, hamiltonian_check, propagate,
                             se_residual, stationary_solutions, CSV_HEADER)
from spineq.errors import DomainError, IntegrationError, SpinEqError
from spineq.fields import ConstField, parse_field_spec
from spineq.numutil import fd_derivative
from spineq.reductions import ReductionPlan, reduce_field, transform_matrix
from spineq.spinors import (CVec3, Spinor, anticonjugate_arr, frame,
                            l_vector_arr, sigma_dot)

from conftest import assert_rel


class TestPropagate:
    def test_zero_field_is_constant(self):
        traj = propagate(ConstField((0, 0, 0)), Spinor(0.6, 0.8j), (0, 5), 1e-10)
        assert_rel(traj.states, np.tile([0.6, 0.8j], (len(traj.times), 1)), 1e-11)

    def test_diagonal_field_phases(self):
        f = 0.7
        traj = propagate(ConstField((0, 0, f)), Spinor(0.5, 1.0), (0, 3), 1e-11,
                         n_nodes=51)
        want = np.stack([0.5 * np.exp(-1j * f * traj.times),
                         1.0 * np.exp(1j * f * traj.times)], axis=1)
        assert_rel(traj.states, want, 1e-9)

    def test_norm_conservation_real_field(self):
        spec = parse_field_spec("F1 = cos(t); F2 = 0.4*sin(3*t); F3 = 1 - 0.2*t")
        tol = 1e-9
        traj = propagate(spec, Spinor(1, 0.5), (0, 6), tol)
        drift = np.max(np.abs(traj.norms() - traj.norms()[0]))
        assert drift <= 10 * tol

    def test_rabi_matches_rotating_frame_closed_form(self):
        f, Omega, F3 = 0.7, 1.3, 0.4
        spec = parse_field_spec(
            f"F1 = {f}*cos({Omega}*t); F2 = {f}*sin({Omega}*t); F3 = {F3}")
        V0 = np.array([0.8, 0.1 - 0.4j])
        traj = propagate(spec, V0, (0, 5), 1e-12, n_nodes=101)
        plan = ReductionPlan.make(CVec3(0, 0, 1), lambda t: Omega * t / 2,
                                  lambda t: Omega / 2)
        Fred = reduce_field(spec, plan, 0.0).as_array()
        for i, t in enumerate(traj.times):
            lab = np.linalg.inv(transform_matrix(plan, t)) @ (
                constant_field_propagator(Fred, t) @ V0)
            assert np.max(np.abs(lab - traj.states[i])) <= 1e-8

    def test_self_convergence(self):
        spec = parse_field_spec("F1 = cos(3*t); F3 = sin(2*t)")
        ref = propagate(spec, Spinor(1, 0), (0, 20), 1e-13, n_nodes=41)
        loose = propagate(spec, Spinor(1, 0), (0, 20), 1e-6, n_nodes=41)
        tight = propagate(spec, Spinor(1, 0), (0, 20), 1e-10, n_nodes=41)
        err_loose = np.max(np.abs(loose.states - ref.states))
        err_tight = np.max(np.abs(tight.states - ref.states))
        assert err_tight < err_loose
        assert err_tight < 1e-8

    def test_singularity_reported(self):
        spec = parse_field_spec("F3 = 1/(t - 0.5)")
        with pytest.raises((IntegrationError, SpinEqError)):
            propagate(spec, Spinor(1, 0), (0, 1), 1e-10)

    def test_tol_floor(self):
        with pytest.raises(DomainError):
            propagate(ConstField((0, 0, 1)), Spinor(1, 0), (0, 1), 1e-14)

    def test_csv_export(self, tmp_path):
        traj = propagate(ConstField((0, 0, 1)), Spinor(1, 0), (0, 1), 1e-10,
                         n_nodes=11)
        path = tmp_path / "t.csv"
        with open(path, "w") as fh:
            traj.to_csv(fh)
        lines = path.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 12
        assert len(lines[1].split(",")) == 12


class TestStationary:
    def test_z_field(self):
        sols = stationary_solutions(CVec3(0, 0, 1))
        by_lam = {round(l.real): v for l, v in sols}
        assert_rel(by_lam[1].as_array(), [1, 0], 1e-14)
        assert_rel(by_lam[-1].as_array(), [0, 1], 1e-14)

    def test_x_field(self):
        sols = stationary_solutions(CVec3(1, 0, 0))
        by_lam = {round(l.real): v for l, v in sols}
        assert_rel(by_lam[1].as_array(), np.array([1, 1]) / math.sqrt(2), 1e-14)

    def test_null_field(self):
        sols = stationary_solutions(CVec3(1, 1j, 0))
        assert len(sols) == 1
        lam, v = sols[0]
        assert lam == 0
        assert np.max(np.abs(sigma_dot(CVec3(1, 1j, 0)) @ v.as_array())) < 1e-13

    def test_each_is_a_solution(self, rng):
        F = CVec3(0.4, -0.3, 0.8)
        for lam, v in stationary_solutions(F):
            def u_fn(t, lam=lam, v=v):
                return cmath.exp(-1j * lam * t) * v.as_array()

            worst = max(se_residual(u_fn, lambda t: F.as_array(), t)
                        for t in np.linspace(0, 2, 7))
            assert worst <= 1e-9


class TestFieldFromQ:
    def test_zero_path(self):
        times = np.linspace(0, 1, 101)
        q = np.zeros((101, 3), dtype=complex)
        F = field_from_q(times, q)
        assert np.max(np.abs(F)) <= 1e-12

    def test_tangent_path_gives_constant_field(self):
        w = 1.2
        times = np.linspace(0, 1.0, 401)
        q = np.stack([np.zeros_like(times), np.zeros_like(times),
                      np.tan(w * times / 2)], axis=1).astype(complex)
        F = field_from_q(times, q)
        want = np.tile([0, 0, w / 2], (len(times), 1))
        assert_rel(F, want, 1e-8)

    def test_unit_branch_rotating(self):
        w = 0.9
        times = np.linspace(0, 2.0, 401)
        q = np.stack([np.cos(w * times), np.sin(w * times),
                      np.zeros_like(times)], axis=1).astype(complex)
        F = field_from_q(times, q, unit=True)
        want = np.tile([0, 0, w], (len(times), 1))
        assert_rel(F, want, 1e-8)

    def test_branch_errors(self):
        times = np.linspace(0, 1, 101)
        q = np.zeros((101, 3), dtype=complex)
        q[:, 2] = 1j
        with pytest.raises(DomainError):
            field_from_q(times, q)  # q^2 = -1
        q2 = np.zeros((101, 3), dtype=complex)
        with pytest.raises(DomainError):
            field_from_q(times, q2, unit=True)


def _evolution_residual(times, R, F):
    h = times[1] - times[0]
    Rd = fd_derivative(R, h)
    out = np.empty(len(times))
    for i in range(len(times)):
        res = 1j * Rd[i] - sigma_dot(F[i]) @ R[i]
        out[i] = np.linalg.norm(res) / max(np.linalg.norm(R[i]), 1e-30)
    return out[2:-2]


class TestEvolutionFromQ:
    def test_constant_zero_path(self):
        times = np.linspace(0, 1, 11)
        q = np.zeros((11, 3), dtype=complex)
        R = evolution_from_q(times, q)
        for Ri in R:
            assert_rel(Ri, np.eye(2), 1e-14)

    def test_tangent_path_closed_form(self):
        w = 1.1
        times = np.linspace(0, 1.2, 241)
        q = np.stack([np.zeros_like(times), np.zeros_like(times),
                      np.tan(w * times / 2)], axis=1).astype(complex)
        R = evolution_from_q(times, q)
        for t, Ri in zip(times, R):
            want = (np.eye(2) * math.cos(w * t / 2)
                    - 1j * math.sin(w * t / 2) * np.array([[1, 0], [0, -1]]))
            assert_rel(Ri, want, 1e-10)

    def test_generic_branch_solves_its_equation(self):
        times = np.linspace(0, 2.0, 801)
        q = np.stack([0.3 * np.sin(times), 0.2 * times,
                      0.4 * np.cos(2 * times)], axis=1).astype(complex)
        F = field_from_q(times, q)
        R = evolution_from_q(times, q)
        assert_rel(R[0], np.eye(2), 1e-12)
        assert np.max(_evolution_residual(times, R, F)) <= 1e-6

    def test_unit_branch_solves_its_equation(self):
        w = 0.8
        times = np.linspace(0, 2.0, 801)
        q = np.stack([np.cos(w * times), np.sin(w * times),
                      np.zeros_like(times)], axis=1).astype(complex)
        F = field_from_q(times, q, unit=True)
        R = evolution_from_q(times, q, unit=True)
        for t, Ri in zip(times, R):
            want = (np.eye(2) * math.cos(w * t)
                    - 1j * math.sin(w * t) * np.array([[1, 0], [0, -1]]))
            assert_rel(Ri, want, 1e-10)
        assert np.max(_evolution_residual(times, R, F)) <= 1e-6

    def test_determinant_conserved(self):
        times = np.linspace(0, 2.0, 401)
        q = np.stack([0.3 * np.sin(times), 0.2 * times,
                      0.4 * np.cos(2 * times)], axis=1).astype(complex)
        R = evolution_from_q(times, q)
        dets = np.array([np.linalg.det(Ri) for Ri in R])
        assert np.max(np.abs(dets - dets[0])) <= 1e-10


class TestEvolutionConstantDirection:
    def test_diagonal(self):
        f = 0.9
        R = evolution_constant_direction(lambda t: f, 0.0, 1.3)
        want = np.diag([cmath.exp(-1j * f * 1.3), cmath.exp(1j * f * 1.3)])
        assert_rel(R, want, 1e-12)

    def test_transverse(self):
        f = 0.9
        R = evolution_constant_direction(lambda t: f, math.pi / 2, 0.7)
        want = (np.eye(2) * math.cos(f * 0.7)
                - 1j * math.sin(f * 0.7) * np.array([[0, 1], [1, 0]]))
        assert_rel(R, want, 1e-12)

    def test_time_dependent_amplitude(self):
        # q = 2t: the phase is the integral t^2, residual against the
        # evolution equation with F = q (sin L, 0, cos L)
        lam = 0.4

        def R_fn(t):
            return evolution_constant_direction(lambda s: 2 * s, lam, t)

        axis = np.array([math.sin(lam), 0.0, math.cos(lam)])

        def F_fn(t):
            return 2 * t * axis

        h = 1e-5
        for t in (0.3, 0.8, 1.4):
            Rd = (R_fn(t - 2 * h) - 8 * R_fn(t - h) + 8 * R_fn(t + h)
                  - R_fn(t + 2 * h)) / (12 * h)
            res = 1j * Rd - sigma_dot(F_fn(t)) @ R_fn(t)
            assert np.linalg.norm(res) <= 1e-8


class TestBloch:
    def test_precession_about_z(self):
        f = 0.6
        path = bloch_propagate(ConstField((0, 0, f)),
                               BlochState(np.array([1.0, 0, 0]), 0.0, 1.0),
                               (0, 4), 1e-11, n_nodes=81)
        want = np.stack([np.cos(2 * f * path.times),
                         np.sin(2 * f * path.times),
                         np.zeros_like(path.times)], axis=1)
        assert_rel(path.n, want, 1e-9)

    def test_damping_parallel_to_n_keeps_n(self):
        # G parallel to n, K = 0: the direction is stationary
        path = bloch_propagate(ConstField((0, 0, 0.5j)),
                               BlochState(np.array([0.0, 0, 1.0]), 0.0, 1.0),
                               (0, 3), 1e-11, n_nodes=31)
        assert_rel(path.n, np.tile([0, 0, 1.0], (31, 1)), 1e-10)
        # and the amplitude grows like exp(G.n t)
        assert_rel(path.N, np.exp(0.5 * path.times), 1e-8)

    def test_matches_spinor_trajectory(self):
        spec = parse_field_spec(
            "F1 = 0.5 + 0.1i; F2 = 0.3*sin(t); F3 = 0.4*cos(t) + 0.2i")
        V0 = np.array([1.0, 0.3 + 0.2j])
        traj = propagate(spec, V0, (0, 3), 1e-12, n_nodes=301)
        n_spin = bloch_vector_path(traj)
        state0 = BlochState(n_spin[0], 0.0, math.sqrt(traj.norms()[0]))
        path = bloch_propagate(spec, state0, (0, 3), 1e-12, n_nodes=301)
        assert np.max(np.abs(path.n - n_spin)) <= 1e-6
        # amplitude law: N^2 = (V,V)
        assert np.max(np.abs(path.N ** 2 - traj.norms())) <= 1e-6

    def test_norm_law_along_trajectory(self):
        spec = parse_field_spec("F1 = 0.5 + 0.1i; F3 = 0.4 + 0.2i")
        traj = propagate(spec, np.array([1.0, 0.3 + 0.2j]), (0, 3), 1e-12,
                         n_nodes=401)
        n2 = traj.norms()
        h = traj.times[1] - traj.times[0]
        lhs = fd_derivative(n2, h)
        n_path = bloch_vector_path(traj)
        G = traj.field_samples.imag
        rhs = 2.0 * n2 * np.sum(G * n_path, axis=1)
        assert np.max(np.abs(lhs - rhs)[2:-2]) <= 1e-6

    def test_non_unit_start_rejected(self):
        with pytest.raises(DomainError):
            bloch_propagate(ConstField((0, 0, 1)),
                            BlochState(np.array([1.0, 1.0, 0]), 0.0, 1.0),
                            (0, 1), 1e-10)


class TestHamiltonianForm:
    def test_zero_coupling(self):
        f = 0.8
        rep = hamiltonian_check(lambda t: f, lambda t: 0.0, 0.3, 0.2, (0, 2),
                                1e-11, n_nodes=51)
        assert np.max(np.abs(rep.q - 0.3)) <= 1e-10
        assert_rel(rep.p, 0.2 - 2 * f * rep.times, 1e-9)

    def test_energy_conserved_constant_coefficients(self):
        rep = hamiltonian_check(lambda t: 0.4, lambda t: 0.7, 0.2, 0.3,
                                (0, 5), 1e-11, n_nodes=801)
        assert not rep.truncated
        assert np.max(np.abs(rep.H - rep.H[0])) <= 1e-8

    def test_matches_angle_form(self):
        rep = hamiltonian_check(lambda t: 0.4 + 0.1 * math.sin(t),
                                lambda t: 0.7 + 0.2 * math.cos(t),
                                0.2, 0.3, (0, 4), 1e-11, n_nodes=801)
        assert rep.angle_mismatch <= 1e-6

    def test_second_order_equation_residual(self):
        rep = hamiltonian_check(lambda t: 0.4, lambda t: 0.7, 0.2, 0.3,
                                (0, 2), 1e-11, n_nodes=2001)
        assert rep.theta_eq_residual <= 1e-5

    def test_pole_truncation_flag(self):
        # strong constant drive pushes q to +-1
        rep = hamiltonian_check(lambda t: 2.0, lambda t: 1e-3, 0.0, 0.5,
                                (0, 40), 1e-10, n_nodes=101)
        assert rep.truncated or abs(rep.q).max() < 1.0

    def test_bad_q0(self):
        with pytest.raises(DomainError):
            hamiltonian_check(lambda t: 1, lambda t: 1, 1.5, 0.0, (0, 1))


class TestConservationLaws:
    def test_l_vector_evolution(self):
        # d/dt of the three bilinear vectors along a complex-field trajectory
        spec = parse_field_spec(
            "F1 = 0.5 + 0.2i; F2 = 0.3*sin(t); F3 = 0.4*cos(t) + 0.1i")
        traj = propagate(spec, np.array([1.0, 0.3 - 0.5j]), (0, 2), 1e-12,
                         n_nodes=801)
        h = traj.times[1] - traj.times[0]
        V = traj.states
        Vb = anticonjugate_arr(V)
        F = traj.field_samples
        n2 = traj.norms()

        L_vv = l_vector_arr(V, V)
        L_vb_v = l_vector_arr(Vb, V)
        L_v_vb = l_vector_arr(V, Vb)

        want_vv = (1j * (F.conj() - F) * n2[:, None]
                   + np.cross(F + F.conj(), L_vv))
        want_vbv = 2.0 * np.cross(F, L_vb_v)
        want_vvb = 2.0 * np.cross(F.conj(), L_v_vb)
        sl = slice(2, -2)
        assert np.max(np.abs(fd_derivative(L_vv, h) - want_vv)[sl]) <= 1e-5
        assert np.max(np.abs(fd_derivative(L_vb_v, h) - want_vbv)[sl]) <= 1e-5
        assert np.max(np.abs(fd_derivative(L_v_vb, h) - want_vvb)[sl]) <= 1e-5

    def test_l_vector_derivative_identities(self):
        # with V' = -i (sigma.F) V these hold pointwise to roundoff:
        # L^{v,v'} = -i (V,V) F + [F x L^{v,v}],  L^{vbar,v'} = [F x L^{vbar,v}]
        spec = parse_field_spec("F1 = 0.5 + 0.2i; F3 = 0.4 + 0.1i")
        traj = propagate(spec, np.array([1.0, 0.3 - 0.5j]), (0, 2), 1e-12,
                         n_nodes=101)
        V = traj.states
        F = traj.field_samples
        n2 = traj.norms()
        vdot = np.empty_like(V)
        for i in range(len(V)):
            vdot[i] = -1j * (sigma_dot(F[i]) @ V[i])
        Vb = anticonjugate_arr(V)
        lhs1 = l_vector_arr(V, vdot)
        want1 = -1j * n2[:, None] * F + np.cross(F, l_vector_arr(V, V))
        assert np.max(np.abs(lhs1 - want1)) <= 1e-11
        lhs2 = l_vector_arr(Vb, vdot)
        want2 = np.cross(F, l_vector_arr(Vb, V))
        assert np.max(np.abs(lhs2 - want2)) <= 1e-11

    def test_triad_evolution(self):
        # e1' = 2 e2 (K.n) - 2 n (K.e2 + G.e1)   [n-coefficient from the
        #       L-vector evolution; the printed form's (K.n) there is
        #       inconsistent with it]
        # e2' = 2 n (K.e1 - G.e2) - 2 e1 (K.n)
        # n'  = 2 e1 (K.e2 + G.e1) + 2 e2 (G.e2 - K.e1)
        spec = parse_field_spec(
            "F1 = 0.5 + 0.2i; F2 = 0.3*sin(t); F3 = 0.4*cos(t) + 0.1i")
        traj = propagate(spec, np.array([1.0, 0.3 - 0.5j]), (0, 2), 1e-12,
                         n_nodes=801)
        h = traj.times[1] - traj.times[0]
        K, G = traj.field_samples.real, traj.field_samples.imag
        e1 = np.empty((len(traj.times), 3))
        e2 = np.empty_like(e1)
        nn = np.empty_like(e1)
        for i in range(len(traj.times)):
            a, b, c = frame(Spinor.from_array(traj.states[i]))
            e1[i], e2[i], nn[i] = a.as_array().real, b.as_array().real, c.as_array().real

        def dot(x, y):
            return np.sum(x * y, axis=1)[:, None]

        want_e1 = 2 * e2 * dot(K, nn) - 2 * nn * (dot(K, e2) + dot(G, e1))
        want_e2 = 2 * nn * (dot(K, e1) - dot(G, e2)) - 2 * e1 * dot(K, nn)
        want_n = 2 * e1 * (dot(K, e2) + dot(G, e1)) + 2 * e2 * (dot(G, e2) - dot(K, e1))
        sl = slice(2, -2)
        assert np.max(np.abs(fd_derivative(e1, h) - want_e1)[sl]) <= 1e-5
        assert np.max(np.abs(fd_derivative(e2, h) - want_e2)[sl]) <= 1e-5
        assert np.max(np.abs(fd_derivative(nn, h) - want_n)[sl]) <= 1e-5

    def test_propagator_determinant_conserved(self):
        spec = parse_field_spec(
            "F1 = 0.5 + 0.2i; F2 = 0.3*sin(t); F3 = 0.4*cos(t) + 0.1i")
        cols = [propagate(spec, np.array(e, dtype=complex), (0, 3), 1e-12,
                          n_nodes=61) for e in ([1, 0], [0, 1])]
        R = np.stack([np.stack([a, b], axis=1)
                      for a, b in zip(cols[0].states, cols[1].states)])
        dets = np.array([np.linalg.det(Ri) for Ri in R])
        assert np.max(np.abs(dets - dets[0])) <= 1e-10
