//! Tensors in F^3 (x) F^n (x) F^n presented by their three n x n slices,
//! their 3n x 3n block contraction operators, decomposition samples, the
//! exact congruence identity that controls the contraction's determinant,
//! and the explicit full-rank witnesses used by the genericity checks.
//!
//! Block layout convention, fixed once for the whole crate: if P, Q, R are
//! the three slices, the contraction is
//!
//! ```text
//!        [  0   P   Q ]
//!        [ -P   0   R ]
//!        [ -Q  -R   0 ]
//! ```
//!
//! which is skew-symmetric exactly when the slices are symmetric.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};
use crate::rng::{sample_nonzero_vec, SeedRng};

/// Retry budget for degenerate random draws in witness constructions.
pub const WITNESS_RETRY_CAP: u32 = 10;

/// A tensor u (x) v (x) w-space element with dim u-space 3, presented as
/// three n x n slices (rows index the first n-dimensional factor, columns
/// the second).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3<F: Field> {
    n: usize,
    slices: [Matrix<F>; 3],
}

impl<F: Field> Tensor3<F> {
    pub fn new(slices: [Matrix<F>; 3]) -> Result<Self> {
        let n = slices[0].rows();
        for s in &slices {
            if !s.is_square() || s.rows() != n {
                return Err(Error::Shape("slices must be square of equal size".into()));
            }
            if s.field() != slices[0].field() {
                return Err(Error::Shape("slices carry mixed field contexts".into()));
            }
        }
        Ok(Tensor3 { n, slices })
    }

    pub fn zero(field: F, n: usize) -> Self {
        let z = || Matrix::zeros(field.clone(), n, n);
        Tensor3 { n, slices: [z(), z(), z()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        self.slices[0].field()
    }

    pub fn slice(&self, a: usize) -> &Matrix<F> {
        &self.slices[a]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "tensor size mismatch");
        Tensor3 {
            n: self.n,
            slices: [
                self.slices[0].add(&other.slices[0]),
                self.slices[1].add(&other.slices[1]),
                self.slices[2].add(&other.slices[2]),
            ],
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Tensor3 {
            n: self.n,
            slices: [
                self.slices[0].scale(c),
                self.slices[1].scale(c),
                self.slices[2].scale(c),
            ],
        }
    }

    /// Flatten to ambient coordinates (a, i, j) -> a*n^2 + i*n + j.
    pub fn flatten(&self) -> Vec<F::Elem> {
        let mut out = Vec::with_capacity(3 * self.n * self.n);
        for s in &self.slices {
            for i in 0..self.n {
                out.extend(s.row(i).iter().cloned());
            }
        }
        out
    }
}

/// A tensor whose slices are symmetric (an element of the partially
/// symmetric space); construction validates symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor3<F: Field>(Tensor3<F>);

impl<F: Field> SymTensor3<F> {
    pub fn new(slices: [Matrix<F>; 3]) -> Result<Self> {
        let t = Tensor3::new(slices)?;
        if t.slices.iter().any(|s| !s.is_symmetric()) {
            return Err(Error::NotSymmetric);
        }
        Ok(SymTensor3(t))
    }

    pub fn zero(field: F, n: usize) -> Self {
        SymTensor3(Tensor3::zero(field, n))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn field(&self) -> &F {
        self.0.field()
    }

    pub fn slice(&self, a: usize) -> &Matrix<F> {
        self.0.slice(a)
    }

    pub fn as_tensor(&self) -> &Tensor3<F> {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        SymTensor3(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        SymTensor3(self.0.scale(c))
    }

    /// Flatten to the symmetric ambient coordinates: for each slice the
    /// entries (i, j) with i <= j, giving 3 * n(n+1)/2 coordinates.
    pub fn flatten(&self) -> Vec<F::Elem> {
        let n = self.n();
        let mut out = Vec::with_capacity(3 * sym_pair_count(n));
        for s in &self.0.slices {
            for i in 0..n {
                for j in i..n {
                    out.push(s.get(i, j).clone());
                }
            }
        }
        out
    }
}

/// n(n+1)/2, the number of independent entries of a symmetric matrix.
pub fn sym_pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

fn require_nonzero<F: Field>(field: &F, v: &[F::Elem]) -> Result<()> {
    if v.iter().all(|x| field.is_zero(x)) {
        Err(Error::ZeroVector)
    } else {
        Ok(())
    }
}

/// One decomposable summand u (x) v (x) w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreSummand<F: Field> {
    pub u: [F::Elem; 3],
    pub v: Vec<F::Elem>,
    pub w: Vec<F::Elem>,
}

/// One partially symmetric summand u (x) v^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymSummand<F: Field> {
    pub u: [F::Elem; 3],
    pub v: Vec<F::Elem>,
}

/// A sample with k decomposable summands, either fully decomposable
/// (u (x) v (x) w) or partially symmetric (u (x) v^2).  Every vector is
/// required to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompSample<F: Field> {
    Segre(Vec<SegreSummand<F>>),
    SegreVeronese(Vec<SymSummand<F>>),
}

/// The tensor a sample realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realized<F: Field> {
    Segre(Tensor3<F>),
    Sym(SymTensor3<F>),
}

impl<F: Field> Realized<F> {
    pub fn contraction(&self) -> Matrix<F> {
        match self {
            Realized::Segre(t) => contraction_segre(t),
            Realized::Sym(t) => contraction_sym(t),
        }
    }

    pub fn flatten(&self) -> Vec<F::Elem> {
        match self {
            Realized::Segre(t) => t.flatten(),
            Realized::Sym(t) => t.flatten(),
        }
    }
}

impl<F: Field> DecompSample<F> {
    /// Validated fully decomposable sample.
    pub fn segre(field: &F, summands: Vec<SegreSummand<F>>) -> Result<Self> {
        let n = summands.first().map_or(0, |s| s.v.len());
        for s in &summands {
            if s.v.len() != n || s.w.len() != n {
                return Err(Error::Shape("summand vector lengths differ".into()));
            }
            require_nonzero(field, &s.u)?;
            require_nonzero(field, &s.v)?;
            require_nonzero(field, &s.w)?;
        }
        Ok(DecompSample::Segre(summands))
    }

    /// Validated partially symmetric sample.
    pub fn segre_veronese(field: &F, summands: Vec<SymSummand<F>>) -> Result<Self> {
        let n = summands.first().map_or(0, |s| s.v.len());
        for s in &summands {
            if s.v.len() != n {
                return Err(Error::Shape("summand vector lengths differ".into()));
            }
            require_nonzero(field, &s.u)?;
            require_nonzero(field, &s.v)?;
        }
        Ok(DecompSample::SegreVeronese(summands))
    }

    /// Seeded random fully decomposable sample with k summands.
    pub fn random_segre(field: &F, n: usize, k: usize, rng: &mut SeedRng) -> Self {
        let summands = (0..k)
            .map(|_| {
                let u = sample_nonzero_vec(field, 3, rng);
                SegreSummand {
                    u: [u[0].clone(), u[1].clone(), u[2].clone()],
                    v: sample_nonzero_vec(field, n, rng),
                    w: sample_nonzero_vec(field, n, rng),
                }
            })
            .collect();
        DecompSample::Segre(summands)
    }

    /// Seeded random partially symmetric sample with k summands.
    pub fn random_sym(field: &F, n: usize, k: usize, rng: &mut SeedRng) -> Self {
        let summands = (0..k)
            .map(|_| {
                let u = sample_nonzero_vec(field, 3, rng);
                SymSummand {
                    u: [u[0].clone(), u[1].clone(), u[2].clone()],
                    v: sample_nonzero_vec(field, n, rng),
                }
            })
            .collect();
        DecompSample::SegreVeronese(summands)
    }

    pub fn k(&self) -> usize {
        match self {
            DecompSample::Segre(s) => s.len(),
            DecompSample::SegreVeronese(s) => s.len(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            DecompSample::Segre(s) => s.first().map_or(0, |x| x.v.len()),
            DecompSample::SegreVeronese(s) => s.first().map_or(0, |x| x.v.len()),
        }
    }

    /// Sum the rank-one slices of each summand into a concrete tensor.
    pub fn realize(&self, field: &F) -> Realized<F> {
        match self {
            DecompSample::Segre(summands) => {
                let n = self.n();
                let mut slices =
                    [0, 1, 2].map(|_| Matrix::zeros(field.clone(), n, n));
                for s in summands {
                    for (a, slice) in slices.iter_mut().enumerate() {
                        for i in 0..n {
                            for j in 0..n {
                                let t = field.mul(&s.u[a], &field.mul(&s.v[i], &s.w[j]));
                                let v = field.add(slice.get(i, j), &t);
                                slice.set(i, j, v);
                            }
                        }
                    }
                }
                Realized::Segre(Tensor3::new(slices).expect("consistent shapes"))
            }
            DecompSample::SegreVeronese(summands) => {
                let n = self.n();
                let mut slices =
                    [0, 1, 2].map(|_| Matrix::zeros(field.clone(), n, n));
                for s in summands {
                    for (a, slice) in slices.iter_mut().enumerate() {
                        for i in 0..n {
                            for j in 0..n {
                                let t = field.mul(&s.u[a], &field.mul(&s.v[i], &s.v[j]));
                                let v = field.add(slice.get(i, j), &t);
                                slice.set(i, j, v);
                            }
                        }
                    }
                }
                Realized::Sym(SymTensor3::new(slices).expect("slices are symmetric"))
            }
        }
    }
}

/// Assemble the 3n x 3n block matrix [[0, P, Q], [-P, 0, R], [-Q, -R, 0]].
fn skew_block<F: Field>(p: &Matrix<F>, q: &Matrix<F>, r: &Matrix<F>) -> Matrix<F> {
    let n = p.rows();
    let f = p.field().clone();
    let mut m = Matrix::zeros(f, 3 * n, 3 * n);
    m.paste(0, n, p);
    m.paste(0, 2 * n, q);
    m.paste(n, 0, &p.neg());
    m.paste(n, 2 * n, r);
    m.paste(2 * n, 0, &q.neg());
    m.paste(2 * n, n, &r.neg());
    m
}

/// Contraction operator of a general tensor in its block layout.
pub fn contraction_segre<F: Field>(t: &Tensor3<F>) -> Matrix<F> {
    skew_block(t.slice(0), t.slice(1), t.slice(2))
}

/// Contraction operator of a partially symmetric tensor; skew-symmetric
/// because the slices are.
pub fn contraction_sym<F: Field>(t: &SymTensor3<F>) -> Matrix<F> {
    skew_block(t.slice(0), t.slice(1), t.slice(2))
}

/// The generalized commutator P adj(Q) R - R adj(Q) P whose determinant
/// controls det of the contraction.  Defined for singular Q as well (the
/// adjugate is polynomial in Q).
pub fn strassen_commutator<F: Field>(
    p: &Matrix<F>,
    q: &Matrix<F>,
    r: &Matrix<F>,
) -> Result<Matrix<F>> {
    if !p.is_square() || p.rows() != q.rows() || q.rows() != r.rows() || !q.is_square() || !r.is_square() {
        return Err(Error::Shape("commutator needs three square slices of equal size".into()));
    }
    let adj = q.adjugate()?;
    Ok(p.matmul(&adj).matmul(r).sub(&r.matmul(&adj).matmul(p)))
}

/// Outcome of the congruence-identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    /// The three-factor block congruence reproduced the target matrix
    /// entry for entry.
    pub identity_holds: bool,
    /// det(A) * det(Q)^(n-2) = det(P adj(Q) R - R adj(Q) P).
    pub scalar_holds: bool,
}

/// Verify, entry for entry, the congruence
///
/// ```text
/// [I 0    0 ]   [ 0  P  Q]   [I  0        0]   [ 0  0  Q]
/// [0 I -PQi] * [-P  0  R] * [0  I        0] = [ 0  Z  R]
/// [0 0    I ]   [-Q -R  0]   [0 -QiP      I]   [-Q -R  0]
/// ```
///
/// with Qi = Q^{-1} and Z = P Q^{-1} R - R Q^{-1} P, together with its
/// scalar corollary det(A) det(Q)^{n-2} = det(P adj(Q) R - R adj(Q) P).
/// Requires n >= 2 and invertible Q.
pub fn check_congruence_identity<F: Field>(
    p: &Matrix<F>,
    q: &Matrix<F>,
    r: &Matrix<F>,
) -> Result<CongruenceReport> {
    let f = p.field().clone();
    let n = p.rows();
    if n < 2 {
        return Err(Error::InvalidParameter("congruence identity needs n >= 2"));
    }
    if !p.is_square() || q.rows() != n || r.rows() != n || !q.is_square() || !r.is_square() {
        return Err(Error::Shape("slices must be square of equal size".into()));
    }
    let qi = q.inverse()?; // Err(Singular) when Q is not invertible
    let a = skew_block(p, q, r);

    let mut left = Matrix::identity(f.clone(), 3 * n);
    left.paste(n, 2 * n, &p.matmul(&qi).neg());
    let mut right = Matrix::identity(f.clone(), 3 * n);
    right.paste(2 * n, n, &qi.matmul(p).neg());

    let z = p.matmul(&qi).matmul(r).sub(&r.matmul(&qi).matmul(p));
    let mut target = Matrix::zeros(f.clone(), 3 * n, 3 * n);
    target.paste(0, 2 * n, q);
    target.paste(n, n, &z);
    target.paste(n, 2 * n, r);
    target.paste(2 * n, 0, &q.neg());
    target.paste(2 * n, n, &r.neg());

    let identity_holds = left.matmul(&a).matmul(&right) == target;

    let det_a = a.determinant()?;
    let det_q = q.determinant()?;
    let lhs = f.mul(&det_a, &f.pow(&det_q, (n - 2) as u64));
    let rhs = strassen_commutator(p, q, r)?.determinant()?;
    let scalar_holds = lhs == rhs;

    Ok(CongruenceReport { identity_holds, scalar_holds })
}

/// Explicit full-rank witness for odd n >= 3: slices P = diag(lambda),
/// Q = I, R = the cyclic superdiagonal matrix of the mu's.  The draw is
/// retried until the realized contraction has rank 3n (degenerate draws
/// have a cyclically repeated lambda).
pub fn generic_witness_segre<F: Field>(
    field: &F,
    n: usize,
    rng: &mut SeedRng,
) -> Result<Tensor3<F>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter("witness needs odd n >= 3"));
    }
    for _ in 0..=WITNESS_RETRY_CAP {
        let lambda: Vec<F::Elem> = (0..n).map(|_| field.sample_nonzero(rng)).collect();
        let mu: Vec<F::Elem> = (0..n).map(|_| field.sample_nonzero(rng)).collect();
        let mut p = Matrix::zeros(field.clone(), n, n);
        for i in 0..n {
            p.set(i, i, lambda[i].clone());
        }
        let q = Matrix::identity(field.clone(), n);
        let mut r = Matrix::zeros(field.clone(), n, n);
        for i in 0..n {
            r.set(i, (i + 1) % n, mu[i].clone());
        }
        let t = Tensor3::new([p, q, r])?;
        if contraction_segre(&t).rank() == 3 * n {
            return Ok(t);
        }
    }
    Err(Error::DegenerateAfterRetries { retries: WITNESS_RETRY_CAP, what: "full-rank witness (odd n)" })
}

/// Explicit full-rank witness for even n >= 2: slices P = I,
/// Q = diag(lambda), R = sum_h mu_h (e_h + e_{h + n/2})^2.  Retried until
/// the realized contraction has rank 3n.
pub fn generic_witness_sym<F: Field>(
    field: &F,
    n: usize,
    rng: &mut SeedRng,
) -> Result<SymTensor3<F>> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidParameter("witness needs even n >= 2"));
    }
    let half = n / 2;
    for _ in 0..=WITNESS_RETRY_CAP {
        let lambda: Vec<F::Elem> = (0..n).map(|_| field.sample_nonzero(rng)).collect();
        let mu: Vec<F::Elem> = (0..half).map(|_| field.sample_nonzero(rng)).collect();
        let p = Matrix::identity(field.clone(), n);
        let mut q = Matrix::zeros(field.clone(), n, n);
        for i in 0..n {
            q.set(i, i, lambda[i].clone());
        }
        let mut r = Matrix::zeros(field.clone(), n, n);
        for h in 0..half {
            for &(i, j) in &[(h, h), (h, h + half), (h + half, h), (h + half, h + half)] {
                let v = field.add(r.get(i, j), &mu[h]);
                r.set(i, j, v);
            }
        }
        let t = SymTensor3::new([p, q, r])?;
        if contraction_sym(&t).rank() == 3 * n {
            return Ok(t);
        }
    }
    Err(Error::DegenerateAfterRetries { retries: WITNESS_RETRY_CAP, what: "full-rank witness (even n)" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals, DEFAULT_PRIMES};
    use crate::rng::{sample_symmetric, seeded};

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIMES[0]).unwrap()
    }

    fn e_k(f: &PrimeField, n: usize, k: usize) -> Vec<u64> {
        let mut v = vec![f.zero(); n];
        v[k] = f.one();
        v
    }

    #[test]
    fn realize_single_standard_summand_fills_one_entry() {
        let f = fp();
        let s = SegreSummand {
            u: [f.one(), f.zero(), f.zero()],
            v: e_k(&f, 2, 0),
            w: e_k(&f, 2, 0),
        };
        let sample = DecompSample::segre(&f, vec![s]).unwrap();
        let Realized::Segre(t) = sample.realize(&f) else { panic!("expected general tensor") };
        assert_eq!(*t.slice(0).get(0, 0), 1);
        assert!(t.slice(1).is_zero() && t.slice(2).is_zero());
        // A decomposable tensor's contraction has rank exactly 2.
        assert_eq!(contraction_segre(&t).rank(), 2);
    }

    #[test]
    fn decomposable_samples_have_contraction_rank_2() {
        let f = fp();
        let mut rng = seeded(10);
        for n in 2..=6 {
            let sample = DecompSample::random_segre(&f, n, 1, &mut rng);
            assert_eq!(sample.realize(&f).contraction().rank(), 2, "n = {n}");
            let sym = DecompSample::random_sym(&f, n, 1, &mut rng);
            assert_eq!(sym.realize(&f).contraction().rank(), 2, "sym n = {n}");
        }
    }

    #[test]
    fn sym_realize_produces_symmetric_slices_and_expected_rank() {
        let f = fp();
        let mut rng = seeded(11);
        let sample = DecompSample::random_sym(&f, 4, 5, &mut rng);
        let Realized::Sym(t) = sample.realize(&f) else { panic!("expected symmetric") };
        for a in 0..3 {
            assert!(t.slice(a).is_symmetric());
        }
        // k = 5 generic summands at n = 4: rank min(2k, 3n) = 10.
        assert_eq!(contraction_sym(&t).rank(), 10);
    }

    #[test]
    fn contraction_of_zero_tensor_is_zero() {
        let t = Tensor3::zero(fp(), 3);
        assert!(contraction_segre(&t).is_zero());
    }

    #[test]
    fn generic_tensors_reach_full_contraction_rank() {
        let f = fp();
        let mut rng = seeded(12);
        // General: random slices at n = 3 -> rank 9.
        let t = Tensor3::new([
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
        ])
        .unwrap();
        assert_eq!(contraction_segre(&t).rank(), 9);
        // Symmetric: random symmetric slices at n = 4 -> rank 12.
        let s = SymTensor3::new([
            sample_symmetric(&f, 4, &mut rng),
            sample_symmetric(&f, 4, &mut rng),
            sample_symmetric(&f, 4, &mut rng),
        ])
        .unwrap();
        assert_eq!(contraction_sym(&s).rank(), 12);
    }

    #[test]
    fn sym_contraction_is_skew_and_general_one_usually_is_not() {
        let f = fp();
        let mut rng = seeded(13);
        let s = SymTensor3::new([
            sample_symmetric(&f, 3, &mut rng),
            sample_symmetric(&f, 3, &mut rng),
            sample_symmetric(&f, 3, &mut rng),
        ])
        .unwrap();
        assert!(contraction_sym(&s).is_skew_symmetric());
        let t = Tensor3::new([
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
            crate::rng::sample_matrix(&f, 3, 3, &mut rng),
        ])
        .unwrap();
        assert!(!contraction_segre(&t).is_skew_symmetric());
    }

    #[test]
    fn sym_tensor_rejects_non_symmetric_slices() {
        let f = fp();
        let mut bad = Matrix::zeros(f, 2, 2);
        bad.set(0, 1, 1);
        let id = Matrix::identity(f, 2);
        let err = SymTensor3::new([bad, id.clone(), id]).unwrap_err();
        assert_eq!(err, Error::NotSymmetric);
    }

    #[test]
    fn contraction_is_linear_in_the_tensor() {
        let f = fp();
        let mut rng = seeded(14);
        let a = DecompSample::random_sym(&f, 3, 2, &mut rng).realize(&f);
        let b = DecompSample::random_sym(&f, 3, 2, &mut rng).realize(&f);
        let (Realized::Sym(a), Realized::Sym(b)) = (a, b) else { panic!() };
        let c = f.sample(&mut rng);
        let lhs = contraction_sym(&a.add(&b.scale(&c)));
        let rhs = contraction_sym(&a).add(&contraction_sym(&b).scale(&c));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_rank_is_subadditive_on_seeded_pairs() {
        let f = fp();
        let mut rng = seeded(15);
        for _ in 0..10 {
            let Realized::Sym(a) = DecompSample::random_sym(&f, 4, 2, &mut rng).realize(&f) else { panic!() };
            let Realized::Sym(b) = DecompSample::random_sym(&f, 4, 3, &mut rng).realize(&f) else { panic!() };
            let ra = contraction_sym(&a).rank();
            let rb = contraction_sym(&b).rank();
            let rab = contraction_sym(&a.add(&b)).rank();
            assert!(rab <= ra + rb, "rank {rab} > {ra} + {rb}");
        }
    }

    #[test]
    fn k_summand_samples_respect_the_2k_rank_bound() {
        let f = fp();
        let mut rng = seeded(16);
        for n in 2..=6 {
            for k in 1..=6 {
                let r = DecompSample::random_segre(&f, n, k, &mut rng)
                    .realize(&f)
                    .contraction()
                    .rank();
                assert!(r <= 2 * k, "n={n} k={k}: rank {r} > 2k");
                assert_eq!(r, (2 * k).min(3 * n), "n={n} k={k}: generic rank");
            }
        }
    }

    #[test]
    fn congruence_identity_holds_on_seeded_slices_over_both_fields() {
        let f = fp();
        let mut rng = seeded(17);
        for n in 2..=5 {
            let p = crate::rng::sample_matrix(&f, n, n, &mut rng);
            let q = crate::rng::sample_invertible(&f, n, &mut rng, 10).unwrap();
            let r = crate::rng::sample_matrix(&f, n, n, &mut rng);
            let rep = check_congruence_identity(&p, &q, &r).unwrap();
            assert!(rep.identity_holds, "matrix identity failed at n = {n}");
            assert!(rep.scalar_holds, "scalar corollary failed at n = {n}");
        }
        let q = Rationals;
        let mut rng = seeded(18);
        let p = crate::rng::sample_matrix(&q, 3, 3, &mut rng);
        let qq = crate::rng::sample_invertible(&q, 3, &mut rng, 10).unwrap();
        let r = crate::rng::sample_matrix(&q, 3, 3, &mut rng);
        let rep = check_congruence_identity(&p, &qq, &r).unwrap();
        assert!(rep.identity_holds && rep.scalar_holds);
    }

    #[test]
    fn congruence_identity_with_all_identity_slices_gives_zero_determinants() {
        let f = fp();
        let id = Matrix::identity(f, 4);
        let rep = check_congruence_identity(&id, &id, &id).unwrap();
        assert!(rep.identity_holds && rep.scalar_holds);
        // Both determinant sides vanish: the commutator is zero and the
        // block matrix is singular.
        let a = skew_block(&id, &id, &id);
        assert!(f.is_zero(&a.determinant().unwrap()));
    }

    #[test]
    fn congruence_identity_rejects_singular_q() {
        let f = fp();
        let id = Matrix::identity(f, 3);
        let zero = Matrix::zeros(f, 3, 3);
        assert_eq!(check_congruence_identity(&id, &zero, &id).unwrap_err(), Error::Singular);
    }

    #[test]
    fn commutator_of_equal_outer_slices_vanishes() {
        let f = fp();
        let mut rng = seeded(19);
        let p = crate::rng::sample_matrix(&f, 4, 4, &mut rng);
        let q = crate::rng::sample_matrix(&f, 4, 4, &mut rng);
        assert!(strassen_commutator(&p, &q, &p).unwrap().is_zero());
    }

    #[test]
    fn witness_odd_n_has_full_rank_and_cyclic_commutator_shape() {
        let f = fp();
        for n in [3usize, 5, 7] {
            let mut rng = seeded(20 + n as u64);
            let t = generic_witness_segre(&f, n, &mut rng).unwrap();
            assert_eq!(contraction_segre(&t).rank(), 3 * n, "n = {n}");
            // With Q = I the commutator is [P, R]: cyclic with entries
            // mu_i (lambda_i - lambda_{i+1}); check the support pattern.
            let z = strassen_commutator(t.slice(0), t.slice(1), t.slice(2)).unwrap();
            for i in 0..n {
                for j in 0..n {
                    if j != (i + 1) % n {
                        assert!(f.is_zero(z.get(i, j)), "n={n} stray entry at ({i},{j})");
                    }
                }
            }
            let lam = |i: usize| t.slice(0).get(i % n, i % n).clone();
            let mu = |i: usize| t.slice(2).get(i, (i + 1) % n).clone();
            for i in 0..n {
                let expect = f.mul(&mu(i), &f.sub(&lam(i), &lam(i + 1)));
                assert_eq!(*z.get(i, (i + 1) % n), expect, "n={n} entry {i}");
            }
        }
    }

    #[test]
    fn witness_rejects_even_or_tiny_n() {
        let f = fp();
        let mut rng = seeded(1);
        assert!(generic_witness_segre(&f, 4, &mut rng).is_err());
        assert!(generic_witness_segre(&f, 1, &mut rng).is_err());
        assert!(generic_witness_sym(&f, 3, &mut rng).is_err());
    }

    #[test]
    fn witness_even_n_has_full_rank() {
        let f = fp();
        for n in [2usize, 4, 6] {
            let mut rng = seeded(30 + n as u64);
            let t = generic_witness_sym(&f, n, &mut rng).unwrap();
            assert_eq!(contraction_sym(&t).rank(), 3 * n, "n = {n}");
            assert!(contraction_sym(&t).is_skew_symmetric());
        }
    }

    #[test]
    fn degenerate_witness_data_drops_rank() {
        // All lambdas equal makes [P, R] vanish: rank falls to 2n,
        // which is what the witness constructor's retry loop guards
        // against.
        let f = fp();
        let n = 5;
        let p = Matrix::identity(f, n).scale(&f.from_i64(7));
        let q = Matrix::identity(f, n);
        let mut r = Matrix::zeros(f, n, n);
        for i in 0..n {
            r.set(i, (i + 1) % n, f.from_i64(3));
        }
        let t = Tensor3::new([p, q, r]).unwrap();
        assert_eq!(contraction_segre(&t).rank(), 2 * n);
    }

    #[test]
    fn flatten_lengths_and_linearity() {
        let f = fp();
        let mut rng = seeded(40);
        let Realized::Sym(t) = DecompSample::random_sym(&f, 4, 2, &mut rng).realize(&f) else { panic!() };
        assert_eq!(t.flatten().len(), 3 * sym_pair_count(4));
        let Realized::Segre(g) = DecompSample::random_segre(&f, 4, 2, &mut rng).realize(&f) else { panic!() };
        assert_eq!(g.flatten().len(), 3 * 16);
    }

    #[test]
    fn samples_reject_zero_vectors() {
        let f = fp();
        let bad = SegreSummand { u: [f.zero(); 3], v: e_k(&f, 2, 0), w: e_k(&f, 2, 1) };
        assert_eq!(DecompSample::segre(&f, vec![bad]).unwrap_err(), Error::ZeroVector);
    }
}
