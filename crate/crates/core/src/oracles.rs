//! Independent reference implementations used to validate the production
//! paths: dense spin diagonalization, Chebyshev statevector propagation,
//! finite-size gap extrapolation, and finite-chain mode sums.
//!
//! Statevector convention: slot `j` of the site ordering lives on bit `j`
//! of the basis index, bit value 0 = up.

use crate::error::{Error, Result};
use crate::scalar::{cexp, cv, to_f64, Scalar, C};
use crate::spin_mps::{
    chain_only_terms, HamiltonianTerm, SiteLabel, SiteOrdering, SpinModelParams,
};
use nalgebra::DMatrix;
use num_complex::Complex;

/// Largest supported statevector exponent (`2^MAX_QUBITS` amplitudes).
pub const MAX_QUBITS: usize = 14;

/// Chain sizes used for gap extrapolation by default.
pub const DEFAULT_GAP_SIZES: [usize; 3] = [10, 12, 14];

fn check_size(slots: usize) -> Result<()> {
    if slots > MAX_QUBITS {
        return Err(Error::SizeCap {
            spins: slots,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Accumulate `out += H_term |psi>` for one Hamiltonian term.
fn apply_term<T: Scalar>(
    term: &HamiltonianTerm<T>,
    ordering: &SiteOrdering,
    psi: &[C<T>],
    out: &mut [C<T>],
) {
    match *term {
        HamiltonianTerm::Field { site, strength } => {
            let bit = 1usize << ordering.slot(site);
            for (n, &amp) in psi.iter().enumerate() {
                let sign = if n & bit == 0 { strength } else { -strength };
                out[n] += amp * sign;
            }
        }
        HamiltonianTerm::Bond { a, b, jx, jy, jz } => {
            let ba = 1usize << ordering.slot(a);
            let bb = 1usize << ordering.slot(b);
            let flip = ba | bb;
            for (n, &amp) in psi.iter().enumerate() {
                let equal = (n & ba == 0) == (n & bb == 0);
                if jz != T::zero() {
                    let sign = if equal { jz } else { -jz };
                    out[n] += amp * sign;
                }
                // X X flips both bits; Y Y additionally picks up -1 when the
                // two spins are parallel.
                let m = n ^ flip;
                let xy = if equal { jx - jy } else { jx + jy };
                if xy != T::zero() {
                    out[m] += amp * xy;
                }
            }
        }
    }
}

/// `H |psi>` as a fresh vector.
pub fn apply_hamiltonian<T: Scalar>(
    terms: &[HamiltonianTerm<T>],
    ordering: &SiteOrdering,
    psi: &[C<T>],
) -> Vec<C<T>> {
    let mut out = vec![Complex::new(T::zero(), T::zero()); psi.len()];
    for term in terms {
        apply_term(term, ordering, psi, &mut out);
    }
    out
}

/// Dense Hamiltonian matrix, built column by column from the term list.
pub fn dense_hamiltonian<T: Scalar>(
    terms: &[HamiltonianTerm<T>],
    ordering: &SiteOrdering,
) -> Result<DMatrix<C<T>>> {
    check_size(ordering.len())?;
    let dim = 1usize << ordering.len();
    let mut h = DMatrix::zeros(dim, dim);
    let mut unit = vec![Complex::new(T::zero(), T::zero()); dim];
    for col in 0..dim {
        unit[col] = Complex::new(T::one(), T::zero());
        let hcol = apply_hamiltonian(terms, ordering, &unit);
        for (row, v) in hcol.into_iter().enumerate() {
            h[(row, col)] = v;
        }
        unit[col] = Complex::new(T::zero(), T::zero());
    }
    Ok(h)
}

/// Sorted eigenvalues of a dense Hermitian matrix.
pub fn sorted_eigenvalues<T: Scalar>(h: &DMatrix<C<T>>) -> Vec<T> {
    let eig = h.clone().symmetric_eigen();
    let mut vals: Vec<T> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    vals
}

/// Ground state (energy, normalized vector) of a dense Hermitian matrix.
pub fn dense_ground_state<T: Scalar>(h: &DMatrix<C<T>>) -> (T, Vec<C<T>>) {
    let eig = h.clone().symmetric_eigen();
    let mut idx = 0;
    for k in 1..eig.eigenvalues.len() {
        if eig.eigenvalues[k] < eig.eigenvalues[idx] {
            idx = k;
        }
    }
    let vec = eig.eigenvectors.column(idx).iter().copied().collect();
    (eig.eigenvalues[idx], vec)
}

/// Lowest `count` eigenvalues by Lanczos iteration with full
/// reorthogonalization, using only Hamiltonian applications.
///
/// Reaches sizes where the dense matrix is impractical (the cap is the
/// statevector limit, not the matrix limit). A single Krylov run sees one
/// vector per exactly degenerate eigenspace, so an exact multiplet is
/// reported once; near degeneracies converge normally.
pub fn lanczos_lowest_eigenvalues<T: Scalar>(
    terms: &[HamiltonianTerm<T>],
    ordering: &SiteOrdering,
    count: usize,
) -> Result<Vec<T>> {
    check_size(ordering.len())?;
    let dim = 1usize << ordering.len();
    if count == 0 || count > dim {
        return Err(Error::InvalidParams(format!(
            "requested {count} eigenvalues of a dimension-{dim} operator"
        )));
    }

    // Deterministic pseudo-random start vector, so every component of the
    // spectrum is reachable.
    let mut seed = 0x853c49e6748fea9bu64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        cv::<T>((seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
    };
    let mut v: Vec<C<T>> = (0..dim).map(|_| Complex::new(next(), next())).collect();
    let norm = v
        .iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt();
    for z in &mut v {
        *z /= Complex::new(norm, T::zero());
    }

    let dot = |a: &[C<T>], b: &[C<T>]| -> C<T> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.conj() * y)
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z)
    };

    let max_iter = 300.min(dim);
    let mut basis: Vec<Vec<C<T>>> = vec![v];
    let mut alphas: Vec<T> = Vec::new();
    let mut betas: Vec<T> = Vec::new();
    let mut previous: Option<Vec<T>> = None;
    let mut scale = T::one();

    for _ in 0..max_iter {
        let mut w = apply_hamiltonian(terms, ordering, basis.last().unwrap());
        let alpha = dot(basis.last().unwrap(), &w).re;
        alphas.push(alpha);
        scale = scale.max(alpha.abs());
        // Two full reorthogonalization passes keep the basis orthonormal even
        // after many iterations.
        for _ in 0..2 {
            for u in &basis {
                let overlap = dot(u, &w);
                for (wz, uz) in w.iter_mut().zip(u) {
                    *wz -= overlap * uz;
                }
            }
        }
        let beta = w
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();

        let ritz = tridiagonal_eigenvalues(&alphas, &betas);
        let enough = ritz.len() >= count;
        let converged = enough
            && previous.as_ref().is_some_and(|prev| {
                prev.len() >= count
                    && (0..count).all(|i| (ritz[i] - prev[i]).abs() <= scale * cv::<T>(1e-12))
            });
        if converged || (enough && beta <= scale * cv::<T>(1e-13)) {
            return Ok(ritz.into_iter().take(count).collect());
        }
        previous = Some(ritz);
        if beta <= scale * cv::<T>(1e-13) {
            // Krylov space exhausted before `count` distinct values appeared.
            break;
        }
        betas.push(beta);
        for z in &mut w {
            *z /= Complex::new(beta, T::zero());
        }
        basis.push(w);
    }
    Err(Error::NoConvergence {
        iterations: alphas.len(),
        residual: betas.last().map(|b| to_f64(*b)).unwrap_or(0.0),
    })
}

/// Eigenvalues (ascending) of the symmetric tridiagonal Lanczos matrix.
fn tridiagonal_eigenvalues<T: Scalar>(diag: &[T], off: &[T]) -> Vec<T> {
    let m = diag.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = diag[i];
        if i + 1 < m {
            t[(i, i + 1)] = off[i];
            t[(i + 1, i)] = off[i];
        }
    }
    let mut vals: Vec<T> = t.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    vals
}

/// Mean and variance of the energy in a normalized state.
pub fn energy_moments<T: Scalar>(
    terms: &[HamiltonianTerm<T>],
    ordering: &SiteOrdering,
    psi: &[C<T>],
) -> (T, T) {
    let hpsi = apply_hamiltonian(terms, ordering, psi);
    let mut e = Complex::new(T::zero(), T::zero());
    let mut e2 = T::zero();
    for (a, b) in psi.iter().zip(&hpsi) {
        e += a.conj() * b;
        e2 += b.norm_sqr();
    }
    (e.re, (e2 - e.re * e.re).max(T::zero()))
}

/// Bessel functions `J_0(x) .. J_kmax(x)` by downward recurrence with
/// normalization `J_0 + 2 sum J_{2m} = 1`.
fn bessel_j_sequence(x: f64, kmax: usize) -> Vec<f64> {
    if x.abs() < 1e-12 {
        let mut out = vec![0.0; kmax + 1];
        out[0] = 1.0;
        return out;
    }
    let start = kmax + 20 + (1.5 * x) as usize;
    let mut jp = 0.0f64;
    let mut j = 1e-300f64;
    let mut out = vec![0.0; kmax + 1];
    let mut norm = 0.0f64;
    for k in (0..start).rev() {
        let jm = (2.0 * (k as f64 + 1.0) / x) * j - jp;
        jp = j;
        j = jm;
        // Rescale to dodge overflow during the unnormalized recurrence.
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
        if k <= kmax {
            out[k] = j;
        }
        if k > 0 && k % 2 == 0 {
            norm += 2.0 * j;
        }
    }
    norm += j;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Propagate `|psi(t)> = exp(-i H t) |psi(0)>` by a Chebyshev expansion of
/// the propagator. Exact to floating-point accuracy for the given terms.
pub fn ed_spin_evolve<T: Scalar>(
    terms: &[HamiltonianTerm<T>],
    ordering: &SiteOrdering,
    psi0: &[C<T>],
    t: T,
) -> Result<Vec<C<T>>> {
    check_size(ordering.len())?;
    if psi0.len() != 1usize << ordering.len() {
        return Err(Error::InvalidParams(format!(
            "statevector has {} amplitudes, ordering needs {}",
            psi0.len(),
            1usize << ordering.len()
        )));
    }
    // One-norm bound on the spectrum: sum of term magnitudes.
    let mut bound = T::zero();
    for term in terms {
        bound += match *term {
            HamiltonianTerm::Field { strength, .. } => strength.abs(),
            HamiltonianTerm::Bond { jx, jy, jz, .. } => jx.abs() + jy.abs() + jz.abs(),
        };
    }
    let at = to_f64(bound * t.abs());
    if at == 0.0 {
        return Ok(psi0.to_vec());
    }
    let kmax = (at + 25.0 * at.cbrt() + 30.0) as usize;
    let bessel = bessel_j_sequence(at, kmax);
    let inv = T::one() / bound;

    // Chebyshev recurrence on the rescaled Hamiltonian.
    let mut tk_prev: Vec<C<T>> = psi0.to_vec();
    let mut tk: Vec<C<T>> = apply_hamiltonian(terms, ordering, psi0)
        .into_iter()
        .map(|v| v * inv)
        .collect();
    let mut result: Vec<C<T>> = psi0.iter().map(|&v| v * cv::<T>(bessel[0])).collect();
    let sign_t = if t >= T::zero() { T::one() } else { -T::one() };
    for k in 1..=kmax {
        // (-i)^k for forward time; conjugate phase for reversed time.
        let phase = match k % 4 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), -sign_t),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), sign_t),
        };
        let coef = phase * cv::<T>(2.0 * bessel[k]);
        for (r, &v) in result.iter_mut().zip(&tk) {
            *r += v * coef;
        }
        if k < kmax {
            let htk: Vec<C<T>> = apply_hamiltonian(terms, ordering, &tk)
                .into_iter()
                .map(|v| v * inv)
                .collect();
            let next: Vec<C<T>> = htk
                .iter()
                .zip(&tk_prev)
                .map(|(&h, &p)| h * cv::<T>(2.0) - p)
                .collect();
            tk_prev = tk;
            tk = next;
        }
    }
    Ok(result)
}

/// Embed a dense chain state into the full slot ordering, with the sender
/// ancilla up and the receiver ancilla down.
pub fn embed_with_ancillas<T: Scalar>(
    chain_psi: &[C<T>],
    params: &SpinModelParams<T>,
) -> Result<Vec<C<T>>> {
    params.validate()?;
    let ordering = params.ordering();
    check_size(ordering.len())?;
    if chain_psi.len() != 1usize << params.n {
        return Err(Error::InvalidParams(format!(
            "chain state has {} amplitudes, chain needs {}",
            chain_psi.len(),
            1usize << params.n
        )));
    }
    let receiver_bit = 1usize << ordering.slot(SiteLabel::Receiver);
    let chain_bits: Vec<usize> = (1..=params.n)
        .map(|i| ordering.slot(SiteLabel::Chain(i)))
        .collect();
    let mut out = vec![Complex::new(T::zero(), T::zero()); 1usize << ordering.len()];
    for (nc, &amp) in chain_psi.iter().enumerate() {
        let mut idx = receiver_bit;
        for (i, &slot) in chain_bits.iter().enumerate() {
            if nc & (1 << i) != 0 {
                idx |= 1 << slot;
            }
        }
        out[idx] = amp;
    }
    Ok(out)
}

/// Joint probabilities of the four ancilla basis states from a dense state.
pub fn dense_ancilla_probs<T: Scalar>(
    psi: &[C<T>],
    params: &SpinModelParams<T>,
) -> crate::spin_mps::AncillaProbabilities<T> {
    let ordering = params.ordering();
    let bs = 1usize << ordering.slot(SiteLabel::Sender);
    let br = 1usize << ordering.slot(SiteLabel::Receiver);
    let mut p = [T::zero(); 4];
    for (n, amp) in psi.iter().enumerate() {
        let s = usize::from(n & bs != 0);
        let r = usize::from(n & br != 0);
        p[2 * s + r] += amp.norm_sqr();
    }
    crate::spin_mps::AncillaProbabilities {
        p_uu: p[0],
        p_ud: p[1],
        p_du: p[2],
        p_dd: p[3],
    }
}

/// Extrapolated spin-chain gap with per-size values.
#[derive(Debug, Clone, PartialEq)]
pub struct GapEstimate<T: Scalar> {
    /// Gap extrapolated linearly in `1/N` to infinite size.
    pub gap: T,
    /// Spread of pairwise extrapolations; widened when the finite-size gaps
    /// are not monotone.
    pub uncertainty: T,
    pub per_size: Vec<(usize, T)>,
}

/// Spectral gap of the bare chain from Lanczos at finite sizes and linear
/// extrapolation in `1/N`.
pub fn finite_chain_gap<T: Scalar>(
    params: &SpinModelParams<T>,
    sizes: &[usize],
) -> Result<GapEstimate<T>> {
    if sizes.len() < 2 {
        return Err(Error::InvalidParams(
            "gap extrapolation needs at least two sizes".into(),
        ));
    }
    let mut per_size = Vec::with_capacity(sizes.len());
    for &n in sizes {
        check_size(n)?;
        let small = SpinModelParams {
            n,
            site_s: 1,
            site_r: 2,
            ..*params
        };
        let terms = chain_only_terms(&small)?;
        let ordering = SiteOrdering::new_chain_only(n);
        let vals = lanczos_lowest_eigenvalues(&terms, &ordering, 2)?;
        per_size.push((n, vals[1] - vals[0]));
    }

    // Least-squares line gap = a + b / N; `a` is the extrapolated gap.
    let xs: Vec<T> = per_size.iter().map(|&(n, _)| T::one() / cv(n as f64)).collect();
    let ys: Vec<T> = per_size.iter().map(|&(_, g)| g).collect();
    let m = cv::<T>(xs.len() as f64);
    let sx = xs.iter().copied().fold(T::zero(), |a, b| a + b);
    let sy = ys.iter().copied().fold(T::zero(), |a, b| a + b);
    let sxx = xs.iter().map(|&x| x * x).fold(T::zero(), |a, b| a + b);
    let sxy = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| x * y)
        .fold(T::zero(), |a, b| a + b);
    let denom = m * sxx - sx * sx;
    let slope = (m * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / m;

    // Pairwise two-point extrapolations bracket the systematic error.
    let mut spread = T::zero();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let s = (ys[j] - ys[i]) / (xs[j] - xs[i]);
            let b = ys[i] - s * xs[i];
            spread = spread.max((b - intercept).abs());
        }
    }
    let monotone = ys.windows(2).all(|w| w[1] <= w[0] + cv(1e-12))
        || ys.windows(2).all(|w| w[1] >= w[0] - cv(1e-12));
    if !monotone {
        let gmin = ys.iter().copied().fold(ys[0], T::min);
        let gmax = ys.iter().copied().fold(ys[0], T::max);
        spread = spread.max(gmax - gmin);
    }
    Ok(GapEstimate {
        gap: intercept,
        uncertainty: spread,
        per_size,
    })
}

/// Exactly solvable limit `Jy = Jz = 0`: the infinite-chain gap is
/// `2 |B - Jx|`.
pub fn ising_limit_gap<T: Scalar>(field: T, jx: T) -> T {
    cv::<T>(2.0) * (field - jx).abs()
}

/// Vacuum position correlation of the size-`n` periodic harmonic chain,
/// `(1/n) sum_k cos(k d) e^{-i w_k tau} / (2 w_k)` over `k = 2 pi j / n`.
/// Converges to the infinite-chain momentum integral as `n` grows.
pub fn finite_mode_correlation<T: Scalar>(
    n: usize,
    coupling: T,
    pinning: T,
    separation: usize,
    tau: T,
) -> Result<C<T>> {
    if pinning <= T::zero() {
        return Err(Error::ZeroMode);
    }
    let mut sum = Complex::new(T::zero(), T::zero());
    for j in 0..n {
        let k = cv::<T>(2.0 * std::f64::consts::PI * j as f64 / n as f64);
        let w = crate::harmonic_gaussian::dispersion(coupling, pinning, k);
        let phase = cexp(Complex::new(T::zero(), -w * tau));
        sum += phase * ((k * cv::<T>(separation as f64)).cos() / (cv::<T>(2.0) * w));
    }
    Ok(sum / cv::<T>(n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_params() -> SpinModelParams<f64> {
        SpinModelParams {
            n: 6,
            field: 1.0,
            jx: 0.3,
            jy: 0.0,
            jz: 0.0,
            ancilla_field: 0.64,
            ancilla_coupling: 0.05,
            site_s: 2,
            site_r: 4,
        }
    }

    #[test]
    fn bessel_matches_known_values() {
        // Frozen references for J_k(5).
        let j = bessel_j_sequence(5.0, 4);
        assert_relative_eq!(j[0], -0.17759677131434, epsilon = 1e-12);
        assert_relative_eq!(j[1], -0.32757913759147, epsilon = 1e-12);
        assert_relative_eq!(j[2], 0.04656511627775, epsilon = 1e-12);
        assert_relative_eq!(j[3], 0.36483123061366, epsilon = 1e-12);
        assert_relative_eq!(j[4], 0.39123236045864, epsilon = 1e-12);
    }

    #[test]
    fn lanczos_matches_dense_eigenvalues() {
        // Full chain with ancillas: 8 slots, including near degeneracies.
        let p = small_params();
        let ordering = p.ordering();
        let terms = crate::spin_mps::build_hamiltonian_terms(&p).unwrap();
        let h = dense_hamiltonian(&terms, &ordering).unwrap();
        let dense = sorted_eigenvalues(&h);
        let lanczos = lanczos_lowest_eigenvalues(&terms, &ordering, 5).unwrap();
        for (a, b) in lanczos.iter().zip(&dense) {
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn dense_hamiltonian_is_hermitian() {
        let p = small_params();
        let ordering = p.ordering();
        let terms = crate::spin_mps::build_hamiltonian_terms(&p).unwrap();
        let h = dense_hamiltonian(&terms, &ordering).unwrap();
        let diff = (&h - h.adjoint()).norm();
        assert!(diff < 1e-13);
    }

    #[test]
    fn chebyshev_matches_eigendecomposition() {
        let p = small_params();
        let ordering = SiteOrdering::new_chain_only(4);
        let small = SpinModelParams { n: 4, site_s: 1, site_r: 2, ..p };
        let terms = chain_only_terms(&small).unwrap();
        let h = dense_hamiltonian(&terms, &ordering).unwrap();
        let dim = 16;
        let mut psi0 = vec![num_complex::Complex::new(0.0, 0.0); dim];
        // Arbitrary normalized start state.
        for (i, a) in psi0.iter_mut().enumerate() {
            *a = num_complex::Complex::new(1.0 + i as f64, 0.5 * i as f64);
        }
        let norm: f64 = psi0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in psi0.iter_mut() {
            *a /= norm;
        }
        let t = 3.7;
        let via_cheby = ed_spin_evolve(&terms, &ordering, &psi0, t).unwrap();
        // Reference: spectral decomposition.
        let eig = h.symmetric_eigen();
        let coeffs = eig.eigenvectors.adjoint() * nalgebra::DVector::from_vec(psi0.clone());
        let mut reference = nalgebra::DVector::from_vec(vec![
            num_complex::Complex::new(0.0, 0.0);
            dim
        ]);
        for k in 0..dim {
            let phase = num_complex::Complex::new(0.0, -eig.eigenvalues[k] * t).exp();
            reference += eig.eigenvectors.column(k) * (coeffs[k] * phase);
        }
        for i in 0..dim {
            assert!((via_cheby[i] - reference[i]).norm() < 1e-11);
        }
    }

    #[test]
    fn rejects_oversized_systems() {
        let p = SpinModelParams {
            n: 16,
            ..small_params()
        };
        let err = finite_chain_gap(&p, &[16, 18]).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
    }

    #[test]
    fn ising_gap_extrapolates_to_free_fermion_value() {
        let p = small_params();
        let est = finite_chain_gap(&p, &DEFAULT_GAP_SIZES).unwrap();
        let exact = ising_limit_gap(1.0, 0.3);
        assert!(
            (est.gap - exact).abs() < 0.1,
            "gap {} vs exact {} (uncertainty {})",
            est.gap,
            exact,
            est.uncertainty
        );
    }

    #[test]
    fn finite_mode_sum_approaches_integral() {
        let big = finite_mode_correlation(4000, 1.0, 0.5, 3, 2.0).unwrap();
        let integral =
            crate::master_analytics::vacuum_correlation(1.0, 0.5, 3, 2.0).unwrap();
        assert!((big - integral).norm() < 1e-3);
    }

    #[test]
    fn embedded_state_has_correct_ancilla_probs() {
        let p = small_params();
        let mut chain = vec![num_complex::Complex::new(0.0, 0.0); 64];
        chain[0] = num_complex::Complex::new(1.0, 0.0);
        let full = embed_with_ancillas(&chain, &p).unwrap();
        let probs = dense_ancilla_probs(&full, &p);
        assert_relative_eq!(probs.p_ud, 1.0, epsilon = 1e-14);
        assert!(probs.p_uu.abs() < 1e-14);
    }
}
