//! Bond-truncated matrix product state in mixed-canonical form.
//!
//! Site tensors are stored as one matrix per physical basis state (0 = up,
//! 1 = down). Everything left of the canonical center is left-orthogonal,
//! everything right of it right-orthogonal, so local expectation values and
//! truncations only ever touch the window around the center.

use crate::scalar::{cv, Scalar, C};
use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex;

type Cm<T> = DMatrix<C<T>>;

/// One site tensor: `m[s]` is the (left bond) x (right bond) matrix for
/// physical state `s`.
#[derive(Debug, Clone)]
struct SiteTensor<T: Scalar> {
    m: [Cm<T>; 2],
}

impl<T: Scalar> SiteTensor<T> {
    fn left_dim(&self) -> usize {
        self.m[0].nrows()
    }
    fn right_dim(&self) -> usize {
        self.m[0].ncols()
    }
}

/// Which neighbor absorbs the singular values after a two-site update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Absorb {
    Left,
    Right,
}

/// Matrix product state over `len()` two-level sites.
#[derive(Debug, Clone)]
pub struct MatrixProductState<T: Scalar> {
    tensors: Vec<SiteTensor<T>>,
    center: usize,
    chi_max: usize,
    discarded_weight: T,
}

impl<T: Scalar> MatrixProductState<T> {
    /// Product state from one normalized two-component vector per site.
    pub fn product_state(site_states: &[[C<T>; 2]], chi_max: usize) -> Self {
        assert!(!site_states.is_empty() && chi_max >= 1);
        let tensors = site_states
            .iter()
            .map(|s| SiteTensor {
                m: [
                    Cm::from_element(1, 1, s[0]),
                    Cm::from_element(1, 1, s[1]),
                ],
            })
            .collect();
        MatrixProductState {
            tensors,
            center: 0,
            chi_max,
            discarded_weight: T::zero(),
        }
    }

    /// All spins down (the `B > 0` decoupled ground state).
    pub fn all_down(sites: usize, chi_max: usize) -> Self {
        let down = [Complex::new(T::zero(), T::zero()), Complex::new(T::one(), T::zero())];
        Self::product_state(&vec![down; sites], chi_max)
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn chi_max(&self) -> usize {
        self.chi_max
    }

    pub fn set_chi_max(&mut self, chi: usize) {
        assert!(chi >= 1);
        self.chi_max = chi;
    }

    /// Cumulative discarded squared Schmidt weight over all truncations.
    pub fn discarded_weight(&self) -> T {
        self.discarded_weight
    }

    /// Bond dimensions between consecutive sites.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.tensors[..self.len() - 1]
            .iter()
            .map(|t| t.right_dim())
            .collect()
    }

    /// Norm of the state (center-block Frobenius norm).
    pub fn norm(&self) -> T {
        let c = &self.tensors[self.center];
        (c.m[0].norm_squared() + c.m[1].norm_squared()).sqrt()
    }

    /// Rescale to unit norm.
    pub fn normalize(&mut self) {
        let n = self.norm();
        let inv = Complex::new(T::one() / n, T::zero());
        let c = &mut self.tensors[self.center];
        c.m[0] *= inv;
        c.m[1] *= inv;
    }

    /// Move the canonical center to `target` by QR sweeps.
    pub fn move_center_to(&mut self, target: usize) {
        assert!(target < self.len());
        while self.center < target {
            self.orthogonalize_step_right();
        }
        while self.center > target {
            self.orthogonalize_step_left();
        }
    }

    fn orthogonalize_step_right(&mut self) {
        let c = self.center;
        let (l, r) = (self.tensors[c].left_dim(), self.tensors[c].right_dim());
        // Stack [A0; A1] vertically and QR-factor; Q becomes the new
        // left-orthogonal tensor, R is absorbed into the right neighbor.
        let mut stacked = Cm::zeros(2 * l, r);
        stacked.view_mut((0, 0), (l, r)).copy_from(&self.tensors[c].m[0]);
        stacked.view_mut((l, 0), (l, r)).copy_from(&self.tensors[c].m[1]);
        let qr = stacked.qr();
        let q = qr.q();
        let rmat = qr.r();
        let new_bond = q.ncols();
        self.tensors[c].m[0] = q.view((0, 0), (l, new_bond)).clone_owned();
        self.tensors[c].m[1] = q.view((l, 0), (l, new_bond)).clone_owned();
        let next = &mut self.tensors[c + 1];
        next.m[0] = &rmat * &next.m[0];
        next.m[1] = &rmat * &next.m[1];
        self.center += 1;
    }

    fn orthogonalize_step_left(&mut self) {
        let c = self.center;
        let (l, r) = (self.tensors[c].left_dim(), self.tensors[c].right_dim());
        // Stack [A0 A1] horizontally; QR of the adjoint gives the new
        // right-orthogonal tensor, the remainder goes to the left neighbor.
        let mut stacked = Cm::zeros(l, 2 * r);
        stacked.view_mut((0, 0), (l, r)).copy_from(&self.tensors[c].m[0]);
        stacked.view_mut((0, r), (l, r)).copy_from(&self.tensors[c].m[1]);
        let qr = stacked.adjoint().qr();
        let q = qr.q();
        let rmat = qr.r();
        let new_bond = q.ncols();
        let qh = q.adjoint();
        self.tensors[c].m[0] = qh.view((0, 0), (new_bond, r)).clone_owned();
        self.tensors[c].m[1] = qh.view((0, r), (new_bond, r)).clone_owned();
        let lmat = rmat.adjoint();
        let prev = &mut self.tensors[c - 1];
        prev.m[0] = &prev.m[0] * &lmat;
        prev.m[1] = &prev.m[1] * &lmat;
        self.center -= 1;
    }

    /// Apply a single-site operator. Safe for canonical form only if the
    /// operator is unitary or `slot` is the center.
    pub fn apply_single_site(&mut self, slot: usize, op: &Matrix2<C<T>>) {
        let t = &mut self.tensors[slot];
        let new0 = &t.m[0] * op[(0, 0)] + &t.m[1] * op[(0, 1)];
        let new1 = &t.m[0] * op[(1, 0)] + &t.m[1] * op[(1, 1)];
        t.m = [new0, new1];
    }

    /// Apply a two-site gate on `(slot, slot + 1)` with SVD truncation to the
    /// bond cap, renormalizing the kept Schmidt spectrum.
    ///
    /// Gate index convention: row/column `2 s_left + s_right`.
    pub(crate) fn apply_two_site(&mut self, slot: usize, gate: &Matrix4<C<T>>, absorb: Absorb) {
        if self.center < slot {
            self.move_center_to(slot);
        } else if self.center > slot + 1 {
            self.move_center_to(slot + 1);
        }
        let l = self.tensors[slot].left_dim();
        let r = self.tensors[slot + 1].right_dim();

        // theta[(s, i), (s', j)] = sum_b A[s][i, b] B[s'][b, j]
        let mut theta = [[Cm::zeros(l, r), Cm::zeros(l, r)], [Cm::zeros(l, r), Cm::zeros(l, r)]];
        for s in 0..2 {
            for sp in 0..2 {
                theta[s][sp] = &self.tensors[slot].m[s] * &self.tensors[slot + 1].m[sp];
            }
        }
        let mut rotated = Cm::zeros(2 * l, 2 * r);
        for s in 0..2 {
            for sp in 0..2 {
                let mut block = Cm::zeros(l, r);
                for t in 0..2 {
                    for tp in 0..2 {
                        let g = gate[(2 * s + sp, 2 * t + tp)];
                        if g != Complex::new(T::zero(), T::zero()) {
                            block += &theta[t][tp] * g;
                        }
                    }
                }
                rotated.view_mut((s * l, sp * r), (l, r)).copy_from(&block);
            }
        }

        let (u, sv, vt) = super::svd::robust_svd(&rotated);
        let total: T = sv.iter().map(|&s| s * s).fold(T::zero(), |a, b| a + b);
        let floor = sv[0] * cv::<T>(1e-14);
        let significant = sv.iter().filter(|&&s| s > floor).count().max(1);
        let keep = significant.min(self.chi_max);
        let kept: T = sv
            .iter()
            .take(keep)
            .map(|&s| s * s)
            .fold(T::zero(), |a, b| a + b);
        if total > T::zero() {
            self.discarded_weight += (total - kept) / total;
        }
        let renorm = kept.sqrt();

        let uk = u.columns(0, keep).clone_owned();
        let vk = vt.rows(0, keep).clone_owned();
        let sk: Vec<T> = sv.iter().take(keep).map(|&s| s / renorm).collect();
        match absorb {
            Absorb::Right => {
                // Left tensor gets U, right tensor S V^H; center -> slot + 1.
                self.tensors[slot].m[0] = uk.view((0, 0), (l, keep)).clone_owned();
                self.tensors[slot].m[1] = uk.view((l, 0), (l, keep)).clone_owned();
                let mut sv_mat = vk;
                for (i, &s) in sk.iter().enumerate() {
                    let scale = Complex::new(s, T::zero());
                    for e in sv_mat.row_mut(i).iter_mut() {
                        *e *= scale;
                    }
                }
                self.tensors[slot + 1].m[0] = sv_mat.columns(0, r).clone_owned();
                self.tensors[slot + 1].m[1] = sv_mat.columns(r, r).clone_owned();
                self.center = slot + 1;
            }
            Absorb::Left => {
                // Left tensor gets U S, right tensor V^H; center -> slot.
                let mut us_mat = uk;
                for (i, &s) in sk.iter().enumerate() {
                    let scale = Complex::new(s, T::zero());
                    for e in us_mat.column_mut(i).iter_mut() {
                        *e *= scale;
                    }
                }
                self.tensors[slot].m[0] = us_mat.view((0, 0), (l, keep)).clone_owned();
                self.tensors[slot].m[1] = us_mat.view((l, 0), (l, keep)).clone_owned();
                self.tensors[slot + 1].m[0] = vk.columns(0, r).clone_owned();
                self.tensors[slot + 1].m[1] = vk.columns(r, r).clone_owned();
                self.center = slot;
            }
        }
    }

    /// Insert a fresh site in state `state` at slot position `pos`, threading
    /// the existing bond through it.
    pub fn insert_site(&mut self, pos: usize, state: [C<T>; 2]) {
        assert!(pos > 0 && pos <= self.len(), "insertion must keep slot 0 in place");
        let bond = self.tensors[pos - 1].right_dim();
        let eye = Cm::identity(bond, bond);
        let tensor = SiteTensor {
            m: [eye.clone() * state[0], eye * state[1]],
        };
        self.tensors.insert(pos, tensor);
        if self.center >= pos {
            self.center += 1;
        }
    }

    /// Expectation of a product of single-site operators on distinct slots.
    ///
    /// The state is assumed normalized; the center is moved into the operator
    /// window.
    pub fn expectation_product(&mut self, ops: &[(usize, Matrix2<C<T>>)]) -> C<T> {
        assert!(!ops.is_empty());
        let mut sorted: Vec<&(usize, Matrix2<C<T>>)> = ops.iter().collect();
        sorted.sort_by_key(|(slot, _)| *slot);
        let first = sorted[0].0;
        let last = sorted[sorted.len() - 1].0;
        if self.center < first {
            self.move_center_to(first);
        } else if self.center > last {
            self.move_center_to(last);
        }

        let l0 = self.tensors[first].left_dim();
        let mut env = Cm::identity(l0, l0);
        let mut op_iter = sorted.iter().peekable();
        for slot in first..=last {
            let t = &self.tensors[slot];
            let op = op_iter
                .peek()
                .filter(|(s, _)| *s == slot)
                .map(|(_, op)| *op);
            if op.is_some() {
                op_iter.next();
            }
            env = match op {
                Some(op) => {
                    let mut next = Cm::zeros(t.right_dim(), t.right_dim());
                    for sb in 0..2 {
                        for sk in 0..2 {
                            let g = op[(sb, sk)];
                            if g != Complex::new(T::zero(), T::zero()) {
                                next += t.m[sb].adjoint() * &env * &t.m[sk] * g;
                            }
                        }
                    }
                    next
                }
                None => {
                    t.m[0].adjoint() * &env * &t.m[0] + t.m[1].adjoint() * &env * &t.m[1]
                }
            };
        }
        env.trace()
    }

    /// Reduced density matrix of two (not necessarily adjacent) slots
    /// `a < b`, in the basis `|s_a s_b>` with row index `2 s_a + s_b`.
    pub fn reduced_density_two(&mut self, a: usize, b: usize) -> Matrix4<C<T>> {
        assert!(a < b && b < self.len());
        if self.center < a {
            self.move_center_to(a);
        } else if self.center > b {
            self.move_center_to(b);
        }
        let ta = &self.tensors[a];
        // env[bra][ket] carries the open physical indices of slot a.
        let mut env = [
            [ta.m[0].adjoint() * &ta.m[0], ta.m[0].adjoint() * &ta.m[1]],
            [ta.m[1].adjoint() * &ta.m[0], ta.m[1].adjoint() * &ta.m[1]],
        ];
        for slot in a + 1..b {
            let t = &self.tensors[slot];
            for row in env.iter_mut() {
                for e in row.iter_mut() {
                    *e = t.m[0].adjoint() * &*e * &t.m[0] + t.m[1].adjoint() * &*e * &t.m[1];
                }
            }
        }
        let tb = &self.tensors[b];
        let mut rho = Matrix4::zeros();
        for sa_ket in 0..2 {
            for sb_ket in 0..2 {
                for sa_bra in 0..2 {
                    for sb_bra in 0..2 {
                        let val = (tb.m[sb_bra].adjoint() * &env[sa_bra][sa_ket] * &tb.m[sb_ket])
                            .trace();
                        rho[(2 * sa_ket + sb_ket, 2 * sa_bra + sb_bra)] = val;
                    }
                }
            }
        }
        rho
    }

    /// Dense statevector with slot `j` on bit `j` (slot 0 least significant,
    /// bit value 0 = up). Only for small systems.
    pub fn to_dense(&self) -> Vec<C<T>> {
        let sites = self.len();
        assert!(sites <= 20, "dense conversion only for small systems");
        // configs[n] is a row vector over the current right bond.
        let mut configs: Vec<Cm<T>> = vec![Cm::identity(1, 1)];
        for t in &self.tensors {
            let mut next = Vec::with_capacity(configs.len() * 2);
            for s in 0..2 {
                for v in &configs {
                    next.push(v * &t.m[s]);
                }
            }
            // Bit of the newly folded site must be the most significant so
            // far; reorder so earlier slots stay on lower bits.
            configs = next;
        }
        configs.into_iter().map(|v| v[(0, 0)]).collect()
    }
}

/// Pauli matrices and common gates in the 0 = up convention.
pub mod ops {
    use super::*;

    pub fn identity<T: Scalar>() -> Matrix2<C<T>> {
        Matrix2::identity()
    }

    pub fn sigma_x<T: Scalar>() -> Matrix2<C<T>> {
        let o = Complex::new(T::zero(), T::zero());
        let l = Complex::new(T::one(), T::zero());
        Matrix2::new(o, l, l, o)
    }

    pub fn sigma_y<T: Scalar>() -> Matrix2<C<T>> {
        let o = Complex::new(T::zero(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Matrix2::new(o, -i, i, o)
    }

    pub fn sigma_z<T: Scalar>() -> Matrix2<C<T>> {
        let o = Complex::new(T::zero(), T::zero());
        let l = Complex::new(T::one(), T::zero());
        Matrix2::new(l, o, o, -l)
    }

    /// Projector |s><s|.
    pub fn projector<T: Scalar>(s: usize) -> Matrix2<C<T>> {
        let mut m = Matrix2::zeros();
        m[(s, s)] = Complex::new(T::one(), T::zero());
        m
    }

    /// Two-site swap gate in the `2 s_left + s_right` convention.
    pub fn swap_gate<T: Scalar>() -> Matrix4<C<T>> {
        let mut g = Matrix4::zeros();
        let one = Complex::new(T::one(), T::zero());
        g[(0, 0)] = one;
        g[(1, 2)] = one;
        g[(2, 1)] = one;
        g[(3, 3)] = one;
        g
    }

    /// Two-site Hamiltonian block `jx XX + jy YY + jz ZZ + fa Z_a + fb Z_b`.
    pub fn bond_hamiltonian<T: Scalar>(jx: T, jy: T, jz: T, fa: T, fb: T) -> Matrix4<C<T>> {
        let kron = |p: &Matrix2<C<T>>, q: &Matrix2<C<T>>| -> Matrix4<C<T>> {
            let mut out = Matrix4::zeros();
            for a in 0..2 {
                for b in 0..2 {
                    for c in 0..2 {
                        for d in 0..2 {
                            out[(2 * a + c, 2 * b + d)] = p[(a, b)] * q[(c, d)];
                        }
                    }
                }
            }
            out
        };
        let id = identity::<T>();
        kron(&sigma_x(), &sigma_x()) * Complex::new(jx, T::zero())
            + kron(&sigma_y(), &sigma_y()) * Complex::new(jy, T::zero())
            + kron(&sigma_z(), &sigma_z()) * Complex::new(jz, T::zero())
            + kron(&sigma_z(), &id) * Complex::new(fa, T::zero())
            + kron(&id, &sigma_z()) * Complex::new(fb, T::zero())
    }

    /// `exp(scale * H)` of a Hermitian 4x4 block, with `scale` complex
    /// (`-i dt` for real time, `-dt` for imaginary time).
    pub fn exp_hermitian<T: Scalar>(h: &Matrix4<C<T>>, scale: C<T>) -> Matrix4<C<T>> {
        let eig = nalgebra::SymmetricEigen::new(*h);
        let mut out = Matrix4::zeros();
        for k in 0..4 {
            let phase = crate::scalar::cexp(scale * eig.eigenvalues[k]);
            let col = eig.eigenvectors.column(k);
            for i in 0..4 {
                for j in 0..4 {
                    out[(i, j)] += col[i] * col[j].conj() * phase;
                }
            }
        }
        out
    }

    /// `exp(scale * h)` of a Hermitian 2x2 block.
    pub fn exp_hermitian2<T: Scalar>(h: &Matrix2<C<T>>, scale: C<T>) -> Matrix2<C<T>> {
        let eig = nalgebra::SymmetricEigen::new(*h);
        let mut out = Matrix2::zeros();
        for k in 0..2 {
            let phase = crate::scalar::cexp(scale * eig.eigenvalues[k]);
            let col = eig.eigenvectors.column(k);
            for i in 0..2 {
                for j in 0..2 {
                    out[(i, j)] += col[i] * col[j].conj() * phase;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;
    use approx::assert_relative_eq;

    type Cf = Complex<f64>;

    fn up() -> [Cf; 2] {
        [Cf::new(1.0, 0.0), Cf::new(0.0, 0.0)]
    }

    fn down() -> [Cf; 2] {
        [Cf::new(0.0, 0.0), Cf::new(1.0, 0.0)]
    }

    fn plus() -> [Cf; 2] {
        let r = Cf::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        [r, r]
    }

    #[test]
    fn dense_conversion_uses_slot_bits() {
        // Slots: 0 down, 1 up, 2 down -> bits 0 and 2 set -> index 5.
        let mps = MatrixProductState::product_state(&[down(), up(), down()], 4);
        let dense = mps.to_dense();
        for (i, a) in dense.iter().enumerate() {
            let expect = if i == 0b101 { 1.0 } else { 0.0 };
            assert_relative_eq!(a.re, expect);
            assert_relative_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn swap_gate_exchanges_sites() {
        let mut mps = MatrixProductState::product_state(&[up(), down(), plus()], 4);
        mps.apply_two_site(0, &swap_gate(), Absorb::Right);
        let dense = mps.to_dense();
        let reference = MatrixProductState::product_state(&[down(), up(), plus()], 4).to_dense();
        for (a, b) in dense.iter().zip(&reference) {
            assert!((a - b).norm_sqr() < 1e-24);
        }
    }

    #[test]
    fn two_site_gate_matches_dense_action() {
        let mut mps = MatrixProductState::product_state(&[plus(), down(), plus(), up()], 8);
        let h = bond_hamiltonian(0.3, 0.2, 0.1, 0.4, -0.25);
        let gate = exp_hermitian(&h, Complex::new(0.0, -0.7));
        let before = mps.to_dense();
        mps.apply_two_site(1, &gate, Absorb::Right);
        let after = mps.to_dense();
        // Dense reference: act on bits 1 (left slot) and 2 (right slot).
        for (idx, b) in after.iter().enumerate() {
            let mut acc = Cf::new(0.0, 0.0);
            let s_left = (idx >> 1) & 1;
            let s_right = (idx >> 2) & 1;
            for t_left in 0..2 {
                for t_right in 0..2 {
                    let src = (idx & !0b110) | (t_left << 1) | (t_right << 2);
                    acc += gate[(2 * s_left + s_right, 2 * t_left + t_right)] * before[src];
                }
            }
            assert!((b - acc).norm_sqr() < 1e-20);
        }
    }

    #[test]
    fn center_moves_preserve_the_state_and_norm() {
        let mut mps = MatrixProductState::product_state(&[plus(), down(), plus(), up(), plus()], 8);
        let h = bond_hamiltonian(0.3, 0.0, 0.0, 1.0, 1.0);
        let gate = exp_hermitian(&h, Complex::new(0.0, -0.4));
        for slot in 0..4 {
            mps.apply_two_site(slot, &gate, Absorb::Right);
        }
        let before = mps.to_dense();
        mps.move_center_to(0);
        assert_relative_eq!(mps.norm(), 1.0, epsilon = 1e-12);
        mps.move_center_to(4);
        let after = mps.to_dense();
        for (a, b) in after.iter().zip(&before) {
            assert!((a - b).norm_sqr() < 1e-24);
        }
    }

    #[test]
    fn expectation_matches_dense_computation() {
        let mut mps = MatrixProductState::product_state(&[plus(), down(), plus(), up()], 8);
        let h = bond_hamiltonian(0.3, 0.2, 0.0, 0.5, 0.5);
        let gate = exp_hermitian(&h, Complex::new(0.0, -0.9));
        mps.apply_two_site(0, &gate, Absorb::Right);
        mps.apply_two_site(2, &gate, Absorb::Right);
        let dense = mps.to_dense();
        // <sigma^x_0 sigma^z_3>: x flips bit 0, z signs bit 3.
        let mut expect = Cf::new(0.0, 0.0);
        for (idx, a) in dense.iter().enumerate() {
            let flipped = idx ^ 1;
            let sign = if idx & 0b1000 == 0 { 1.0 } else { -1.0 };
            expect += dense[flipped].conj() * a * sign;
        }
        let got = mps.expectation_product(&[(0, sigma_x()), (3, sigma_z())]);
        assert!((got - expect).norm_sqr() < 1e-20);
    }

    #[test]
    fn reduced_density_is_a_probability_distribution() {
        let mut mps = MatrixProductState::product_state(&[plus(), down(), plus(), up(), plus()], 8);
        let h = bond_hamiltonian(0.3, 0.1, 0.05, 0.5, 0.5);
        let gate = exp_hermitian(&h, Complex::new(0.0, -1.1));
        for slot in [0, 2, 3, 1] {
            mps.apply_two_site(slot, &gate, Absorb::Right);
        }
        let rho = mps.reduced_density_two(1, 3);
        let trace: Cf = (0..4).map(|i| rho[(i, i)]).sum();
        assert_relative_eq!(trace.re, 1.0, epsilon = 1e-12);
        assert!(trace.im.abs() < 1e-12);
        let diff = rho - rho.adjoint();
        assert!(diff.iter().all(|z| z.norm_sqr() < 1e-24));
        for i in 0..4 {
            assert!(rho[(i, i)].re > -1e-12);
        }
    }

    #[test]
    fn truncation_accumulates_discarded_weight() {
        // chi = 1 forces truncation of any entangling gate; the x x rotation
        // takes |up up> to a two-term Schmidt state.
        let mut mps = MatrixProductState::product_state(&[up(), up()], 1);
        let h = bond_hamiltonian(1.0, 0.0, 0.0, 0.0, 0.0);
        let gate = exp_hermitian(&h, Complex::new(0.0, -0.8));
        mps.apply_two_site(0, &gate, Absorb::Right);
        assert!(mps.discarded_weight() > 1e-6);
        assert_relative_eq!(mps.norm(), 1.0, epsilon = 1e-12);
        assert_eq!(mps.bond_dims(), vec![1]);
    }

    #[test]
    fn inserted_site_threads_the_bond() {
        let mut mps = MatrixProductState::product_state(&[plus(), down(), plus()], 8);
        let h = bond_hamiltonian(0.5, 0.0, 0.0, 0.0, 0.0);
        let gate = exp_hermitian(&h, Complex::new(0.0, -0.6));
        mps.apply_two_site(0, &gate, Absorb::Right);
        mps.apply_two_site(1, &gate, Absorb::Right);
        let before = mps.to_dense();
        mps.insert_site(2, [Cf::new(1.0, 0.0), Cf::new(0.0, 0.0)]);
        assert_eq!(mps.len(), 4);
        let after = mps.to_dense();
        // New slot 2 is up (bit clear); old bit 2 moved to bit 3.
        for (idx, a) in after.iter().enumerate() {
            let expect = if idx & 0b100 != 0 {
                Cf::new(0.0, 0.0)
            } else {
                let old = (idx & 0b11) | ((idx >> 1) & 0b100);
                before[old]
            };
            assert!((a - expect).norm_sqr() < 1e-24);
        }
        assert_relative_eq!(mps.norm(), 1.0, epsilon = 1e-12);
    }
}
