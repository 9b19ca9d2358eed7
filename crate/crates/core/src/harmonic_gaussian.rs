//! Exact dynamics of a periodic harmonic chain with two weakly coupled
//! oscillator ancillas, tracked through first and second moments.
//!
//! The Hamiltonian is quadratic, so a Gaussian state stays Gaussian and is
//! fully described by its displacement vector and covariance matrix. Time
//! evolution is done by one eigendecomposition of the potential matrix
//! followed by closed-form normal-mode rotation, so there is no integrator
//! error.
//!
//! Coordinate convention: indices `0..n` are the chain oscillators, index `n`
//! is the sender ancilla S and index `n + 1` the receiver ancilla R. Phase
//! space is ordered as all positions then all momenta. The vacuum of a mode
//! with frequency `f` has `<q^2> = 1/(2f)` and `<p^2> = f/2`.

use crate::error::{Error, Result};
use crate::scalar::{cv, Scalar};
use crate::timeseries::TimeSeries;
use nalgebra::{DMatrix, DVector};

/// Parameters of the periodic harmonic chain plus two ancilla oscillators.
///
/// `coupling` is the nearest-neighbor frequency Omega, `pinning` the on-site
/// frequency Omega0, `ancilla_freq` the ancilla frequency omega and
/// `ancilla_coupling` the position-position coupling Ja. Attachment sites are
/// 1-based chain indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicModelParams<T: Scalar> {
    pub n: usize,
    pub coupling: T,
    pub pinning: T,
    pub ancilla_freq: T,
    pub ancilla_coupling: T,
    pub site_s: usize,
    pub site_r: usize,
}

impl<T: Scalar> HarmonicModelParams<T> {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidParams(format!(
                "need at least 3 chain oscillators, got {}",
                self.n
            )));
        }
        if self.coupling <= T::zero() {
            return Err(Error::InvalidParams("coupling Omega must be > 0".into()));
        }
        if self.pinning < T::zero() {
            return Err(Error::InvalidParams("pinning Omega0 must be >= 0".into()));
        }
        if self.ancilla_freq <= T::zero() {
            return Err(Error::InvalidParams(
                "ancilla frequency omega must be > 0".into(),
            ));
        }
        if self.site_s < 1 || self.site_r <= self.site_s || self.site_r > self.n {
            return Err(Error::InvalidParams(format!(
                "attachment sites must satisfy 1 <= site_s < site_r <= n, got ({}, {})",
                self.site_s, self.site_r
            )));
        }
        Ok(())
    }

    /// Ancilla separation |m_R - m_S|.
    pub fn separation(&self) -> usize {
        self.site_r - self.site_s
    }

    /// Total coordinate count including the two ancillas.
    pub fn coords(&self) -> usize {
        self.n + 2
    }

    /// Coordinate index of ancilla S.
    pub fn index_s(&self) -> usize {
        self.n
    }

    /// Coordinate index of ancilla R.
    pub fn index_r(&self) -> usize {
        self.n + 1
    }
}

/// Dispersion relation of the infinite pinned chain.
pub fn dispersion<T: Scalar>(coupling: T, pinning: T, k: T) -> T {
    let s = (k * cv::<T>(0.5)).sin();
    (cv::<T>(4.0) * coupling * coupling * s * s + pinning * pinning).sqrt()
}

/// Top of the chain's excitation band, `sqrt(4 Omega^2 + Omega0^2)`.
pub fn band_top<T: Scalar>(coupling: T, pinning: T) -> T {
    (cv::<T>(4.0) * coupling * coupling + pinning * pinning).sqrt()
}

/// Quadratic Hamiltonian `H = p^T p / 2 + q^T V q / 2`.
#[derive(Debug, Clone)]
pub struct QuadraticHamiltonian<T: Scalar> {
    pub potential: DMatrix<T>,
}

/// Normal modes of a quadratic Hamiltonian: `V = O diag(nu^2) O^T`.
#[derive(Debug, Clone)]
pub struct NormalModes<T: Scalar> {
    /// Mode frequencies, ascending.
    pub freqs: DVector<T>,
    /// Orthogonal mode matrix; column `i` is mode `i`.
    pub modes: DMatrix<T>,
}

/// Assemble the potential matrix of chain plus ancillas.
///
/// Fails with a stability error if the matrix is indefinite (for example when
/// the ancilla coupling is too strong for the given frequencies).
pub fn potential_matrix<T: Scalar>(
    params: &HarmonicModelParams<T>,
) -> Result<QuadraticHamiltonian<T>> {
    params.validate()?;
    let n = params.n;
    let m = params.coords();
    let om2 = params.coupling * params.coupling;
    let pin2 = params.pinning * params.pinning;
    let mut v = DMatrix::zeros(m, m);
    for j in 0..n {
        v[(j, j)] = cv::<T>(2.0) * om2 + pin2;
        let next = (j + 1) % n;
        v[(j, next)] -= om2;
        v[(next, j)] -= om2;
    }
    let w2 = params.ancilla_freq * params.ancilla_freq;
    v[(params.index_s(), params.index_s())] = w2;
    v[(params.index_r(), params.index_r())] = w2;
    let ja = params.ancilla_coupling;
    v[(params.index_s(), params.site_s - 1)] = ja;
    v[(params.site_s - 1, params.index_s())] = ja;
    v[(params.index_r(), params.site_r - 1)] = ja;
    v[(params.site_r - 1, params.index_r())] = ja;

    let h = QuadraticHamiltonian { potential: v };
    let min_eig = h
        .normal_mode_eigenvalues()
        .iter()
        .fold(T::max_value().unwrap(), |a, &b| a.min(b));
    let scale = cv::<T>(4.0) * om2 + pin2 + w2;
    if min_eig < -cv::<T>(1e-10) * scale {
        return Err(Error::Unstable {
            most_negative: min_eig.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(h)
}

impl<T: Scalar> QuadraticHamiltonian<T> {
    fn normal_mode_eigenvalues(&self) -> Vec<T> {
        let eig = self.potential.clone().symmetric_eigen();
        eig.eigenvalues.iter().copied().collect()
    }

    /// Eigendecompose the potential. Small negative eigenvalues from roundoff
    /// are clamped to zero before the square root.
    pub fn normal_modes(&self) -> NormalModes<T> {
        let eig = self.potential.clone().symmetric_eigen();
        let m = self.potential.nrows();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
        let mut freqs = DVector::zeros(m);
        let mut modes = DMatrix::zeros(m, m);
        for (col, &src) in order.iter().enumerate() {
            freqs[col] = eig.eigenvalues[src].max(T::zero()).sqrt();
            modes.set_column(col, &eig.eigenvectors.column(src));
        }
        NormalModes { freqs, modes }
    }
}

/// Gaussian state: displacement vector (all q, then all p) and covariance
/// matrix of symmetrized second moments about the displacement.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState<T: Scalar> {
    pub mean: DVector<T>,
    pub cov: DMatrix<T>,
}

impl<T: Scalar> GaussianState<T> {
    /// Number of coordinates.
    pub fn coords(&self) -> usize {
        self.mean.len() / 2
    }

    /// Symplectic eigenvalues (all `1/2` for a pure state in this convention).
    pub fn symplectic_eigenvalues(&self) -> Vec<T> {
        let m = self.coords();
        // A = Sigma * Gamma with Sigma = [[0, I], [-I, 0]]; the eigenvalues of
        // A are +- i nu_j, so read off the positive imaginary parts.
        let mut a = DMatrix::zeros(2 * m, 2 * m);
        a.view_mut((0, 0), (m, 2 * m))
            .copy_from(&self.cov.view((m, 0), (m, 2 * m)).clone_owned());
        let lower = -self.cov.view((0, 0), (m, 2 * m)).clone_owned();
        a.view_mut((m, 0), (m, 2 * m)).copy_from(&lower);
        let eigs = a.complex_eigenvalues();
        let mut out: Vec<T> = eigs.iter().map(|z| z.im).filter(|&x| x > T::zero()).collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// Energy expectation for `H = p^T p / 2 + q^T V q / 2`.
    pub fn energy(&self, h: &QuadraticHamiltonian<T>) -> T {
        let m = self.coords();
        let q = self.mean.rows(0, m).clone_owned();
        let p = self.mean.rows(m, m).clone_owned();
        let gqq = self.cov.view((0, 0), (m, m));
        let gpp = self.cov.view((m, m), (m, m));
        let half = cv::<T>(0.5);
        let fluct = (h.potential.clone() * gqq).trace() + gpp.trace();
        let coh = (h.potential.clone() * &q).dot(&q) + p.dot(&p);
        half * (fluct + coh)
    }
}

/// Ground-state covariance blocks of the chain alone.
///
/// Returns `(<q_j q_l>, <p_j p_l>)` from the discrete mode sums; the
/// position-momentum cross block vanishes. Fails for an unpinned chain whose
/// zero mode makes `<q^2>` diverge.
pub fn chain_ground_covariance<T: Scalar>(
    n: usize,
    coupling: T,
    pinning: T,
) -> Result<(DMatrix<T>, DMatrix<T>)> {
    if pinning <= T::zero() {
        return Err(Error::ZeroMode);
    }
    // Frequencies and weights depend only on |j - l|; precompute per distance.
    let two_pi = cv::<T>(2.0) * T::pi();
    let inv_n = T::one() / cv::<T>(n as f64);
    let mut qcorr = vec![T::zero(); n];
    let mut pcorr = vec![T::zero(); n];
    for mode in 0..n {
        let k = two_pi * cv::<T>(mode as f64) * inv_n;
        let wk = dispersion(coupling, pinning, k);
        for (dist, (qc, pc)) in qcorr.iter_mut().zip(pcorr.iter_mut()).enumerate() {
            let c = (k * cv::<T>(dist as f64)).cos();
            *qc += c / (cv::<T>(2.0) * wk) * inv_n;
            *pc += c * wk * cv::<T>(0.5) * inv_n;
        }
    }
    let qq = DMatrix::from_fn(n, n, |j, l| qcorr[j.abs_diff(l)]);
    let pp = DMatrix::from_fn(n, n, |j, l| pcorr[j.abs_diff(l)]);
    Ok((qq, pp))
}

/// Initial Gaussian state: chain in its ground state, R in its vacuum, S a
/// coherent state with mean occupation `ns0` (real position displacement).
pub fn initial_gaussian<T: Scalar>(
    params: &HarmonicModelParams<T>,
    ns0: T,
) -> Result<GaussianState<T>> {
    params.validate()?;
    if ns0 < T::zero() {
        return Err(Error::InvalidParams("mean occupation must be >= 0".into()));
    }
    let n = params.n;
    let m = params.coords();
    let (qq, pp) = chain_ground_covariance(n, params.coupling, params.pinning)?;
    let mut cov = DMatrix::zeros(2 * m, 2 * m);
    cov.view_mut((0, 0), (n, n)).copy_from(&qq);
    cov.view_mut((m, m), (n, n)).copy_from(&pp);
    let w = params.ancilla_freq;
    for idx in [params.index_s(), params.index_r()] {
        cov[(idx, idx)] = T::one() / (cv::<T>(2.0) * w);
        cov[(m + idx, m + idx)] = w * cv::<T>(0.5);
    }
    let mut mean = DVector::zeros(2 * m);
    mean[params.index_s()] = (cv::<T>(2.0) * ns0 / w).sqrt();
    Ok(GaussianState { mean, cov })
}

/// Ground state of the full coupled model (used for stationarity checks).
pub fn coupled_ground_state<T: Scalar>(modes: &NormalModes<T>) -> Result<GaussianState<T>> {
    let m = modes.freqs.len();
    if modes.freqs.iter().any(|&nu| nu <= T::zero()) {
        return Err(Error::ZeroMode);
    }
    let o = &modes.modes;
    let dq = DMatrix::from_diagonal(&modes.freqs.map(|nu| T::one() / (cv::<T>(2.0) * nu)));
    let dp = DMatrix::from_diagonal(&modes.freqs.map(|nu| nu * cv::<T>(0.5)));
    let mut cov = DMatrix::zeros(2 * m, 2 * m);
    cov.view_mut((0, 0), (m, m)).copy_from(&(o * dq * o.transpose()));
    cov.view_mut((m, m), (m, m)).copy_from(&(o * dp * o.transpose()));
    Ok(GaussianState {
        mean: DVector::zeros(2 * m),
        cov,
    })
}

/// Phase-space propagator `S(t)` of the quadratic Hamiltonian.
///
/// Each normal mode rotates as `(q, p) -> (q cos + p sin/nu, -q nu sin + p cos)`;
/// a near-zero frequency falls back to the free-particle limit `sin(nu t)/nu -> t`.
pub fn symplectic_propagator<T: Scalar>(modes: &NormalModes<T>, t: T) -> DMatrix<T> {
    let m = modes.freqs.len();
    let o = &modes.modes;
    let mut c = DVector::zeros(m);
    let mut s_over = DVector::zeros(m);
    let mut nu_s = DVector::zeros(m);
    for i in 0..m {
        let (cc, ss, ns) = mode_rotation(modes.freqs[i], t);
        c[i] = cc;
        s_over[i] = ss;
        nu_s[i] = ns;
    }
    let block = |d: &DVector<T>| o * DMatrix::from_diagonal(d) * o.transpose();
    let mut s = DMatrix::zeros(2 * m, 2 * m);
    s.view_mut((0, 0), (m, m)).copy_from(&block(&c));
    s.view_mut((0, m), (m, m)).copy_from(&block(&s_over));
    s.view_mut((m, 0), (m, m)).copy_from(&(-block(&nu_s)));
    s.view_mut((m, m), (m, m)).copy_from(&block(&c));
    s
}

/// Rotation entries `(cos nu t, sin(nu t)/nu, nu sin(nu t))` for one mode.
fn mode_rotation<T: Scalar>(nu: T, t: T) -> (T, T, T) {
    let (s, c) = (nu * t).sin_cos();
    let s_over = if nu < cv::<T>(1e-9) {
        // Free-particle limit: sin(nu t)/nu -> t.
        let nt = nu * t;
        t * (T::one() - nt * nt / cv::<T>(6.0))
    } else {
        s / nu
    };
    (c, s_over, nu * s)
}

/// Evolve a Gaussian state for time `t`: `d -> S d`, `Gamma -> S Gamma S^T`.
pub fn evolve_gaussian<T: Scalar>(
    state: &GaussianState<T>,
    modes: &NormalModes<T>,
    t: T,
) -> GaussianState<T> {
    let s = symplectic_propagator(modes, t);
    GaussianState {
        mean: &s * &state.mean,
        cov: &s * &state.cov * s.transpose(),
    }
}

/// Occupation of the oscillator at coordinate `coord` with frequency `f`.
pub fn mode_occupation<T: Scalar>(state: &GaussianState<T>, coord: usize, f: T) -> T {
    let m = state.coords();
    let var_q = state.cov[(coord, coord)];
    let var_p = state.cov[(m + coord, m + coord)];
    let qbar = state.mean[coord];
    let pbar = state.mean[m + coord];
    let half = cv::<T>(0.5);
    (f * var_q + var_p / f - T::one()) * half + (f * qbar * qbar + pbar * pbar / f) * half
}

/// Exact ancilla occupations `n_S(t)`, `n_R(t)` at the given sorted times.
///
/// Works in the normal-mode basis so each sample costs `O(M^2)`. The returned
/// series has columns `n_s`, `n_r`, `energy`.
pub fn simulate_occupations<T: Scalar>(
    params: &HarmonicModelParams<T>,
    ns0: T,
    times: &[T],
) -> Result<TimeSeries<T>> {
    let h = potential_matrix(params)?;
    let modes = h.normal_modes();
    let state = initial_gaussian(params, ns0)?;
    let m = params.coords();
    let o = &modes.modes;

    // Transform moments to the mode basis once.
    let qbar = o.transpose() * state.mean.rows(0, m).clone_owned();
    let pbar = o.transpose() * state.mean.rows(m, m).clone_owned();
    let gqq = o.transpose() * state.cov.view((0, 0), (m, m)) * o;
    let gqp = o.transpose() * state.cov.view((0, m), (m, m)) * o;
    let gpp = o.transpose() * state.cov.view((m, m), (m, m)) * o;

    let mut series = TimeSeries::new(&["n_s", "n_r", "energy"]);
    let w = params.ancilla_freq;
    for &t in times {
        let mut rot: Vec<(T, T, T)> = Vec::with_capacity(m);
        for i in 0..m {
            rot.push(mode_rotation(modes.freqs[i], t));
        }
        let occupation = |coord: usize| -> T {
            // q_c(t) = u . q0 + v . p0 ; p_c(t) = w . q0 + x . p0 (mode basis)
            let mut u = DVector::zeros(m);
            let mut v = DVector::zeros(m);
            let mut wv = DVector::zeros(m);
            let mut xv = DVector::zeros(m);
            for i in 0..m {
                let oc = o[(coord, i)];
                let (c, s_over, nu_s) = rot[i];
                u[i] = oc * c;
                v[i] = oc * s_over;
                wv[i] = -oc * nu_s;
                xv[i] = oc * c;
            }
            let var_q = quadratic_form(&gqq, &gqp, &gpp, &u, &v);
            let var_p = quadratic_form(&gqq, &gqp, &gpp, &wv, &xv);
            let mq = u.dot(&qbar) + v.dot(&pbar);
            let mp = wv.dot(&qbar) + xv.dot(&pbar);
            let half = cv::<T>(0.5);
            (w * var_q + var_p / w - T::one()) * half + (w * mq * mq + mp * mp / w) * half
        };
        let n_s = occupation(params.index_s());
        let n_r = occupation(params.index_r());
        // Energy from the mode-diagonal moments at time t.
        let mut energy = T::zero();
        for i in 0..m {
            let (c, s_over, nu_s) = rot[i];
            let q2 = c * c * gqq[(i, i)]
                + cv::<T>(2.0) * c * s_over * gqp[(i, i)]
                + s_over * s_over * gpp[(i, i)]
                + (c * qbar[i] + s_over * pbar[i]).powi(2);
            let p2 = nu_s * nu_s * gqq[(i, i)] - cv::<T>(2.0) * nu_s * c * gqp[(i, i)]
                + c * c * gpp[(i, i)]
                + (-nu_s * qbar[i] + c * pbar[i]).powi(2);
            let nu = modes.freqs[i];
            energy += (nu * nu * q2 + p2) * cv::<T>(0.5);
        }
        series.push(t, &[n_s, n_r, energy])?;
    }
    Ok(series)
}

fn quadratic_form<T: Scalar>(
    gqq: &DMatrix<T>,
    gqp: &DMatrix<T>,
    gpp: &DMatrix<T>,
    a: &DVector<T>,
    b: &DVector<T>,
) -> T {
    (gqq * a).dot(a) + cv::<T>(2.0) * (gqp * b).dot(a) + (gpp * b).dot(b)
}
