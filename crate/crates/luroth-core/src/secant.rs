//! Secant-variety dimension computation for the two families of cone
//! points used throughout the crate: fully decomposable tensors
//! (P^2 x P^{n-1} x P^{n-1}) and partially symmetric ones (P^2 x P^{n-1}
//! embedded by bidegree (1, 2)).
//!
//! The dimension of the k-th secant variety is computed via the tangent
//! criterion: at k random points of the cone, stack affine tangent bases
//! and take the exact rank.  A rank attained at any specialization over a
//! prime field lower-bounds the generic rank, so the computed value never
//! overestimates; agreement across several (prime, seed) pairs, with
//! resampling, is the acceptance bar for equality.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{stack_rows, Field, Matrix, PrimeField, DEFAULT_PRIMES};
use crate::forms::restrict_to_pencil;
use crate::rng::{sample_nonzero_vec, sample_symmetric, seeded, SeedRng};
use crate::tensor::{
    contraction_sym, generic_witness_sym, sym_pair_count, DecompSample, Realized, SegreSummand,
    SymSummand, SymTensor3, Tensor3,
};

/// Default guard rails: every documented case fits well inside these.
pub const MAX_K: usize = 50;
pub const MAX_N: usize = 16;

/// Shared configuration for genericity checks: which prime fields to use,
/// which seeds, and how many resamples to allow per (prime, seed) pair
/// before accepting the best rank seen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityConfig {
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub retry_cap: u32,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig {
            primes: DEFAULT_PRIMES.to_vec(),
            seeds: alloc::vec![7],
            retry_cap: 10,
        }
    }
}

impl GenericityConfig {
    /// The (prime, seed) pairs, cartesian product in declaration order.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::with_capacity(self.primes.len() * self.seeds.len());
        for &p in &self.primes {
            for &s in &self.seeds {
                out.push((p, s));
            }
        }
        out
    }
}

/// Which family of cone points a secant computation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    /// Fully decomposable u (x) v (x) w, u in F^3, v, w in F^n.
    Segre { n: usize },
    /// Partially symmetric u (x) v^2.
    SegreVeronese { n: usize },
}

impl VarietySpec {
    pub fn n(&self) -> usize {
        match *self {
            VarietySpec::Segre { n } | VarietySpec::SegreVeronese { n } => n,
        }
    }

    /// Dimension of the ambient linear space of tensors.
    pub fn ambient_affine(&self) -> usize {
        match *self {
            VarietySpec::Segre { n } => 3 * n * n,
            VarietySpec::SegreVeronese { n } => 3 * sym_pair_count(n),
        }
    }

    /// Affine dimension of the cone over the variety (= dimension of the
    /// tangent space at a smooth point of the cone).
    pub fn tangent_affine_dim(&self) -> usize {
        match *self {
            VarietySpec::Segre { n } => 2 * n + 1,
            VarietySpec::SegreVeronese { n } => n + 2,
        }
    }

    /// min(ambient, k * tangent): the expected affine dimension of the
    /// k-th secant cone.
    pub fn expected_affine(&self, k: usize) -> usize {
        self.ambient_affine().min(k * self.tangent_affine_dim())
    }

    /// Stable lowercase name used in reports.
    pub fn kind_str(&self) -> &'static str {
        match self {
            VarietySpec::Segre { .. } => "segre",
            VarietySpec::SegreVeronese { .. } => "segre-veronese",
        }
    }

    fn validate(&self, k: usize) -> Result<()> {
        if self.n() == 0 || self.n() > MAX_N {
            return Err(Error::InvalidParameter("n out of supported range"));
        }
        if k == 0 || k > MAX_K {
            return Err(Error::InvalidParameter("k out of supported range"));
        }
        Ok(())
    }
}

fn first_nonzero_index<F: Field>(field: &F, v: &[F::Elem]) -> Result<usize> {
    v.iter()
        .position(|x| !field.is_zero(x))
        .ok_or(Error::ZeroVector)
}

fn outer<F: Field>(field: &F, v: &[F::Elem], w: &[F::Elem]) -> Matrix<F> {
    let mut m = Matrix::zeros(field.clone(), v.len(), w.len());
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            m.set(i, j, field.mul(vi, wj));
        }
    }
    m
}

fn sym_outer<F: Field>(field: &F, v: &[F::Elem], w: &[F::Elem]) -> Matrix<F> {
    let a = outer(field, v, w);
    a.add(&a.transpose())
}

fn basis_vec<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut e = alloc::vec![field.zero(); n];
    e[i] = field.one();
    e
}

/// Tensor with a single named slice (the other two zero).
fn one_slice<F: Field>(field: &F, a: usize, m: Matrix<F>) -> [Matrix<F>; 3] {
    let n = m.rows();
    let mut slices = [0, 1, 2].map(|_| Matrix::zeros(field.clone(), n, n));
    slices[a] = m;
    slices
}

/// Tensor u (x) M for a fixed matrix M: slice a is u_a * M.
fn outer_with_u<F: Field>(u: &[F::Elem; 3], m: &Matrix<F>) -> [Matrix<F>; 3] {
    [0, 1, 2].map(|a| m.scale(&u[a]))
}

/// Basis of the affine tangent space to the cone of decomposable tensors
/// at u (x) v (x) w: the 2n + 1 tensors
/// { e_a (x) v (x) w }_a  u  { u (x) e_i (x) w }_{i != i0}  u
/// { u (x) v (x) e_j } _{j != j0},
/// where i0 (j0) is the first nonzero coordinate of v (w); the dropped
/// directions are linear combinations of the rest, so this is a basis.
pub fn tangent_affine_segre<F: Field>(
    field: &F,
    point: &SegreSummand<F>,
) -> Result<Vec<Tensor3<F>>> {
    let n = point.v.len();
    if point.w.len() != n {
        return Err(Error::Shape("point vectors of different lengths".into()));
    }
    if point.u.iter().all(|x| field.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let i0 = first_nonzero_index(field, &point.v)?;
    let j0 = first_nonzero_index(field, &point.w)?;
    let mut out = Vec::with_capacity(2 * n + 1);
    for a in 0..3 {
        out.push(Tensor3::new(one_slice(field, a, outer(field, &point.v, &point.w)))?);
    }
    for i in (0..n).filter(|&i| i != i0) {
        let m = outer(field, &basis_vec(field, n, i), &point.w);
        out.push(Tensor3::new(outer_with_u(&point.u, &m))?);
    }
    for j in (0..n).filter(|&j| j != j0) {
        let m = outer(field, &point.v, &basis_vec(field, n, j));
        out.push(Tensor3::new(outer_with_u(&point.u, &m))?);
    }
    Ok(out)
}

/// Basis of the affine tangent space to the cone of partially symmetric
/// decomposable tensors at u (x) v^2: the n + 2 tensors
/// { e_a (x) v^2 }_a  u  { u (x) (v e_i^t + e_i v^t) }_{i != i0}.
pub fn tangent_affine_sym<F: Field>(
    field: &F,
    point: &SymSummand<F>,
) -> Result<Vec<SymTensor3<F>>> {
    let n = point.v.len();
    if point.u.iter().all(|x| field.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let i0 = first_nonzero_index(field, &point.v)?;
    let mut out = Vec::with_capacity(n + 2);
    for a in 0..3 {
        out.push(SymTensor3::new(one_slice(field, a, outer(field, &point.v, &point.v)))?);
    }
    for i in (0..n).filter(|&i| i != i0) {
        let m = sym_outer(field, &point.v, &basis_vec(field, n, i));
        out.push(SymTensor3::new(outer_with_u(&point.u, &m))?);
    }
    Ok(out)
}

/// Flattened tangent rows at one random point of the cone.
fn tangent_rows_at_random_point<F: Field>(
    field: &F,
    spec: VarietySpec,
    rng: &mut SeedRng,
) -> Result<Vec<Vec<F::Elem>>> {
    let n = spec.n();
    let u3 = sample_nonzero_vec(field, 3, rng);
    let u = [u3[0].clone(), u3[1].clone(), u3[2].clone()];
    match spec {
        VarietySpec::Segre { .. } => {
            let point = SegreSummand {
                u,
                v: sample_nonzero_vec(field, n, rng),
                w: sample_nonzero_vec(field, n, rng),
            };
            Ok(tangent_affine_segre(field, &point)?
                .iter()
                .map(Tensor3::flatten)
                .collect())
        }
        VarietySpec::SegreVeronese { .. } => {
            let point = SymSummand { u, v: sample_nonzero_vec(field, n, rng) };
            Ok(tangent_affine_sym(field, &point)?
                .iter()
                .map(SymTensor3::flatten)
                .collect())
        }
    }
}

/// Rank of the k stacked tangent bases at fresh random points.
fn stacked_tangent_rank<F: Field>(
    field: &F,
    spec: VarietySpec,
    k: usize,
    rng: &mut SeedRng,
) -> Result<usize> {
    let mut rows = Vec::with_capacity(k * spec.tangent_affine_dim());
    for _ in 0..k {
        rows.extend(tangent_rows_at_random_point(field, spec, rng)?);
    }
    Ok(stack_rows(field.clone(), &rows)?.rank())
}

/// Whether every configured (prime, seed) pair reached the same rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgreementStatus {
    Agreed,
    Inconclusive,
}

/// Result of a secant-dimension computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerraciniReport {
    pub spec: VarietySpec,
    pub k: usize,
    pub ambient_affine: usize,
    pub expected_affine: usize,
    /// Best rank found, maximized over resamples within each pair; equal
    /// across pairs when status is Agreed.
    pub computed_affine: usize,
    /// expected_affine - computed_affine.
    pub defect: usize,
    pub primes_used: Vec<u64>,
    pub seeds_used: Vec<u64>,
    /// Best rank per (prime, seed) pair, in `GenericityConfig::pairs` order.
    pub pair_ranks: Vec<usize>,
    pub status: AgreementStatus,
}

impl TerraciniReport {
    /// Projective dimension of the secant variety (affine cone minus 1).
    pub fn computed_projective(&self) -> usize {
        self.computed_affine.saturating_sub(1)
    }

    pub fn expected_projective(&self) -> usize {
        self.expected_affine.saturating_sub(1)
    }
}

/// Compute the affine dimension of the k-th secant cone by the tangent
/// criterion at k random points, independently over every configured
/// (prime, seed) pair.  Within a pair the rank is maximized over up to
/// retry_cap + 1 point draws, stopping early once the expected dimension
/// is reached; the per-pair bests must agree or the report is marked
/// inconclusive (with the max, which is still a valid lower bound).
pub fn terracini_dimension(
    spec: VarietySpec,
    k: usize,
    cfg: &GenericityConfig,
) -> Result<TerraciniReport> {
    spec.validate(k)?;
    let expected = spec.expected_affine(k);
    let mut pair_ranks = Vec::new();
    for (p, seed) in cfg.pairs() {
        let field = PrimeField::new(p)?;
        let mut rng = seeded(seed);
        let mut best = 0;
        for _ in 0..=cfg.retry_cap {
            best = best.max(stacked_tangent_rank(&field, spec, k, &mut rng)?);
            if best == expected {
                break;
            }
        }
        pair_ranks.push(best);
    }
    let computed = pair_ranks.iter().copied().max().unwrap_or(0);
    let status = if pair_ranks.iter().all(|&r| r == computed) {
        AgreementStatus::Agreed
    } else {
        AgreementStatus::Inconclusive
    };
    debug_assert!(computed <= expected, "tangent rank exceeded the expected cap");
    Ok(TerraciniReport {
        spec,
        k,
        ambient_affine: spec.ambient_affine(),
        expected_affine: expected,
        computed_affine: computed,
        defect: expected - computed,
        primes_used: cfg.primes.clone(),
        seeds_used: cfg.seeds.clone(),
        pair_ranks,
        status,
    })
}

/// The terminal secant index p = ceil(ambient / tangent) at which the
/// secant is expected to fill the ambient space, together with 2p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TerminalK {
    pub p: usize,
    pub two_p: usize,
}

/// Smallest k with k * tangent >= ambient, and its double.  The double
/// satisfies a closed-form case split on the parity of n, verified by the
/// tests: segre 3n-1 (n odd) / 3n (n even); segre-veronese 3n-1 (n odd) /
/// 3n-2 (n even >= 4) / 6 (n = 2).
pub fn expected_terminal_k(spec: VarietySpec) -> TerminalK {
    let a = spec.ambient_affine();
    let t = spec.tangent_affine_dim();
    let p = a.div_ceil(t);
    TerminalK { p, two_p: 2 * p }
}

/// Report of the explicit odd-n spanning configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningReport {
    pub n: usize,
    /// Number of cone points in the configuration: (3n - 1) / 2.
    pub k_points: usize,
    pub ambient_affine: usize,
    pub rank: usize,
    pub full_span: bool,
    /// (prime, seed) pair that certified the span, when one did.
    pub certified_by: Option<(u64, u64)>,
}

/// For odd n, the explicit list of (3n - 1)/2 partially symmetric points
/// u_i (x) e_i^2 （i = 1..n) and u~_nu (x) (e_nu + e_{nu+1} + e_{nu+2})^2
/// (odd nu <= n - 2), with random nonzero u's, has tangent spaces that
/// span the whole ambient space.  Full rank over a single prime field
/// already certifies the span; pairs are tried in order with resampling.
pub fn spanning_list_check(n: usize, cfg: &GenericityConfig) -> Result<SpanningReport> {
    if n < 3 || n % 2 == 0 || n > MAX_N {
        return Err(Error::InvalidParameter("spanning list needs odd n >= 3"));
    }
    let ambient = 3 * sym_pair_count(n);
    let k_points = (3 * n - 1) / 2;
    let mut best_rank = 0;
    let mut certified_by = None;
    'pairs: for (p, seed) in cfg.pairs() {
        let field = PrimeField::new(p)?;
        let mut rng = seeded(seed);
        for _ in 0..=cfg.retry_cap {
            let mut rows = Vec::new();
            let mut push_point = |v: Vec<u64>, rng: &mut SeedRng| -> Result<()> {
                let u3 = sample_nonzero_vec(&field, 3, rng);
                let point = SymSummand { u: [u3[0], u3[1], u3[2]], v };
                for t in tangent_affine_sym(&field, &point)? {
                    rows.push(t.flatten());
                }
                Ok(())
            };
            for i in 0..n {
                push_point(basis_vec(&field, n, i), &mut rng)?;
            }
            for nu in (0..n - 2).step_by(2) {
                let mut v = alloc::vec![field.zero(); n];
                for j in nu..=nu + 2 {
                    v[j] = field.one();
                }
                push_point(v, &mut rng)?;
            }
            let rank = stack_rows(field, &rows)?.rank();
            best_rank = best_rank.max(rank);
            if rank == ambient {
                certified_by = Some((p, seed));
                break 'pairs;
            }
        }
    }
    Ok(SpanningReport {
        n,
        k_points,
        ambient_affine: ambient,
        rank: best_rank,
        full_span: best_rank == ambient,
        certified_by,
    })
}

/// Report of the even-n Pfaffian-hypersurface check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianHypersurfaceReport {
    pub n: usize,
    /// Pf of the contraction vanished exactly for a (3n/2 - 1)-summand
    /// sample (an identity: rank <= 3n - 2 < 3n).
    pub deficient_pf_zero: bool,
    /// Pf was nonzero at a certified full-rank tensor.
    pub generic_pf_nonzero: bool,
    /// Degree in t of Pf along a generic pencil, when not degenerate.
    pub pencil_degree: Option<usize>,
    /// 3n/2, the degree the hypersurface is expected to have.
    pub expected_degree: usize,
}

impl PfaffianHypersurfaceReport {
    pub fn all_hold(&self) -> bool {
        self.deficient_pf_zero
            && self.generic_pf_nonzero
            && self.pencil_degree == Some(self.expected_degree)
    }
}

/// For even n >= 4: the (3n/2 - 1)-st secant is a hypersurface cut out by
/// the Pfaffian of the contraction.  Checks (a) Pf vanishes identically on
/// (3n/2 - 1)-summand samples, (b) Pf is nonzero at a full-rank witness,
/// (c) the restriction of Pf to a generic pencil has degree exactly 3n/2.
pub fn pfaffian_hypersurface_check(
    n: usize,
    cfg: &GenericityConfig,
) -> Result<PfaffianHypersurfaceReport> {
    if n < 4 || n % 2 == 1 || n > MAX_N {
        return Err(Error::InvalidParameter("hypersurface check needs even n >= 4"));
    }
    let expected_degree = 3 * n / 2;
    let k = expected_degree - 1;
    let (p, seed) = *cfg.pairs().first().ok_or(Error::InvalidParameter("empty config"))?;
    let field = PrimeField::new(p)?;
    let mut rng = seeded(seed);

    // (a) Identity, not genericity: any sample works, no retry needed.
    let Realized::Sym(deficient) = DecompSample::random_sym(&field, n, k, &mut rng).realize(&field)
    else {
        unreachable!("symmetric sample realizes symmetrically")
    };
    let deficient_pf_zero = field.is_zero(&contraction_sym(&deficient).pfaffian()?);

    // (b) The witness construction already certifies rank 3n.
    let witness = generic_witness_sym(&field, n, &mut rng)?;
    let generic_pf_nonzero = !field.is_zero(&contraction_sym(&witness).pfaffian()?);

    // (c) Pencil f0 + t f1 through the witness and a random symmetric
    // tensor; resample f1 until the degree-(3n/2) coefficient survives.
    let s0 = contraction_sym(&witness);
    let mut pencil_degree = None;
    for _ in 0..=cfg.retry_cap {
        let f1 = SymTensor3::new([
            sample_symmetric(&field, n, &mut rng),
            sample_symmetric(&field, n, &mut rng),
            sample_symmetric(&field, n, &mut rng),
        ])?;
        let s1 = contraction_sym(&f1);
        let deg = restrict_to_pencil(&field, expected_degree, |t| {
            s0.add(&s1.scale(t))
                .pfaffian()
                .expect("pencil of skew matrices stays skew")
        })?;
        pencil_degree = deg;
        if deg == Some(expected_degree) {
            break;
        }
    }

    Ok(PfaffianHypersurfaceReport {
        n,
        deficient_pf_zero,
        generic_pf_nonzero,
        pencil_degree,
        expected_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIMES[0]).unwrap()
    }

    fn random_segre_point(f: &PrimeField, n: usize, rng: &mut SeedRng) -> SegreSummand<PrimeField> {
        let u = sample_nonzero_vec(f, 3, rng);
        SegreSummand {
            u: [u[0], u[1], u[2]],
            v: sample_nonzero_vec(f, n, rng),
            w: sample_nonzero_vec(f, n, rng),
        }
    }

    fn random_sym_point(f: &PrimeField, n: usize, rng: &mut SeedRng) -> SymSummand<PrimeField> {
        let u = sample_nonzero_vec(f, 3, rng);
        SymSummand { u: [u[0], u[1], u[2]], v: sample_nonzero_vec(f, n, rng) }
    }

    #[test]
    fn tangent_counts_match_the_affine_dimension() {
        let f = fp();
        let mut rng = seeded(1);
        let p = random_sym_point(&f, 4, &mut rng);
        assert_eq!(tangent_affine_sym(&f, &p).unwrap().len(), 6);
        let p = random_segre_point(&f, 3, &mut rng);
        assert_eq!(tangent_affine_segre(&f, &p).unwrap().len(), 7);
    }

    #[test]
    fn tangent_rows_are_linearly_independent_at_seeded_points() {
        let f = fp();
        let mut rng = seeded(2);
        for n in 2..=6 {
            let spec = VarietySpec::Segre { n };
            let rows = tangent_rows_at_random_point(&f, spec, &mut rng).unwrap();
            let rank = stack_rows(f, &rows).unwrap().rank();
            assert_eq!(rank, spec.tangent_affine_dim(), "segre n = {n}");

            let spec = VarietySpec::SegreVeronese { n };
            let rows = tangent_rows_at_random_point(&f, spec, &mut rng).unwrap();
            let rank = stack_rows(f, &rows).unwrap().rank();
            assert_eq!(rank, spec.tangent_affine_dim(), "sym n = {n}");
        }
        // Over the rationals too: the construction is field-agnostic.
        let q = Rationals;
        let mut rng = seeded(3);
        let u = sample_nonzero_vec(&q, 3, &mut rng);
        let point = SegreSummand {
            u: [u[0].clone(), u[1].clone(), u[2].clone()],
            v: sample_nonzero_vec(&q, 3, &mut rng),
            w: sample_nonzero_vec(&q, 3, &mut rng),
        };
        let rows: Vec<_> = tangent_affine_segre(&q, &point)
            .unwrap()
            .iter()
            .map(Tensor3::flatten)
            .collect();
        assert_eq!(stack_rows(q, &rows).unwrap().rank(), 7);
    }

    #[test]
    fn cone_point_lies_in_its_own_tangent_span() {
        let f = fp();
        let mut rng = seeded(4);
        let point = random_sym_point(&f, 5, &mut rng);
        let sample = DecompSample::segre_veronese(&f, alloc::vec![point.clone()]).unwrap();
        let flat_point = sample.realize(&f).flatten();
        let mut rows: Vec<_> = tangent_affine_sym(&f, &point)
            .unwrap()
            .iter()
            .map(SymTensor3::flatten)
            .collect();
        let before = stack_rows(f, &rows).unwrap().rank();
        rows.push(flat_point);
        let after = stack_rows(f, &rows).unwrap().rank();
        assert_eq!(before, after, "adding the cone point must not grow the span");
    }

    #[test]
    fn tangent_rejects_zero_vectors() {
        let f = fp();
        let bad = SymSummand { u: [f.zero(); 3], v: alloc::vec![f.one(), f.zero()] };
        assert_eq!(tangent_affine_sym(&f, &bad).unwrap_err(), Error::ZeroVector);
        let bad = SegreSummand {
            u: [f.one(), f.zero(), f.zero()],
            v: alloc::vec![f.zero(); 3],
            w: alloc::vec![f.one(), f.zero(), f.zero()],
        };
        assert_eq!(tangent_affine_segre(&f, &bad).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn defective_cases_report_defect_one() {
        let cfg = GenericityConfig::default();
        let rep = terracini_dimension(VarietySpec::SegreVeronese { n: 4 }, 5, &cfg).unwrap();
        assert_eq!((rep.computed_affine, rep.expected_affine, rep.defect), (29, 30, 1));
        assert_eq!(rep.status, AgreementStatus::Agreed);

        let rep = terracini_dimension(VarietySpec::Segre { n: 3 }, 4, &cfg).unwrap();
        assert_eq!((rep.computed_affine, rep.expected_affine, rep.defect), (26, 27, 1));

        let rep = terracini_dimension(VarietySpec::Segre { n: 4 }, 5, &cfg).unwrap();
        assert_eq!(rep.computed_affine, 44);
        assert_eq!(rep.computed_projective(), 43);
    }

    #[test]
    fn nondefective_case_reaches_expected_dimension() {
        let cfg = GenericityConfig::default();
        let rep = terracini_dimension(VarietySpec::SegreVeronese { n: 5 }, 6, &cfg).unwrap();
        assert_eq!(rep.defect, 0);
        assert_eq!(rep.computed_projective(), 41);
        assert_eq!(rep.computed_projective(), (5 + 1) * (5 + 1) + 5);
    }

    #[test]
    fn computed_dimension_is_monotone_in_k_and_capped() {
        let cfg = GenericityConfig {
            primes: alloc::vec![DEFAULT_PRIMES[0]],
            seeds: alloc::vec![7],
            retry_cap: 3,
        };
        let spec = VarietySpec::SegreVeronese { n: 4 };
        let mut prev = 0;
        for k in 1..=8 {
            let rep = terracini_dimension(spec, k, &cfg).unwrap();
            assert!(rep.computed_affine >= prev, "k = {k} dropped");
            assert!(rep.computed_affine <= spec.ambient_affine());
            prev = rep.computed_affine;
        }
        assert_eq!(prev, spec.ambient_affine(), "large k must fill the space");
    }

    #[test]
    fn odd_n_terminal_secant_fills_the_symmetric_space() {
        let cfg = GenericityConfig::default();
        for n in [3usize, 5] {
            let k = (3 * n - 1) / 2;
            let rep =
                terracini_dimension(VarietySpec::SegreVeronese { n }, k, &cfg).unwrap();
            assert_eq!(rep.defect, 0, "n = {n}");
            assert_eq!(rep.computed_affine, rep.ambient_affine, "n = {n}");
        }
    }

    #[test]
    fn parameter_caps_are_enforced() {
        let cfg = GenericityConfig::default();
        assert!(terracini_dimension(VarietySpec::Segre { n: 17 }, 2, &cfg).is_err());
        assert!(terracini_dimension(VarietySpec::Segre { n: 3 }, 0, &cfg).is_err());
        assert!(terracini_dimension(VarietySpec::Segre { n: 3 }, 51, &cfg).is_err());
    }

    #[test]
    fn terminal_k_examples_and_case_split() {
        assert_eq!(expected_terminal_k(VarietySpec::Segre { n: 3 }).p, 4);
        assert_eq!(expected_terminal_k(VarietySpec::SegreVeronese { n: 4 }).p, 5);
        assert_eq!(expected_terminal_k(VarietySpec::SegreVeronese { n: 2 }).two_p, 6);
        for n in 2..=MAX_N {
            let s = expected_terminal_k(VarietySpec::Segre { n }).two_p;
            assert_eq!(s, if n % 2 == 1 { 3 * n - 1 } else { 3 * n }, "segre n = {n}");
            let v = expected_terminal_k(VarietySpec::SegreVeronese { n }).two_p;
            let want = match n {
                2 => 6,
                n if n % 2 == 1 => 3 * n - 1,
                n => 3 * n - 2,
            };
            assert_eq!(v, want, "segre-veronese n = {n}");
        }
    }

    #[test]
    fn spanning_list_fills_the_space_for_small_odd_n() {
        let cfg = GenericityConfig::default();
        for (n, ambient) in [(3usize, 18usize), (5, 45)] {
            let rep = spanning_list_check(n, &cfg).unwrap();
            assert!(rep.full_span, "n = {n}");
            assert_eq!(rep.rank, ambient);
            assert_eq!(rep.k_points, (3 * n - 1) / 2);
            assert!(rep.certified_by.is_some());
        }
        assert!(spanning_list_check(4, &cfg).is_err());
    }

    #[test]
    fn pfaffian_hypersurface_checks_hold_at_n_4() {
        let cfg = GenericityConfig::default();
        let rep = pfaffian_hypersurface_check(4, &cfg).unwrap();
        assert!(rep.deficient_pf_zero);
        assert!(rep.generic_pf_nonzero);
        assert_eq!(rep.pencil_degree, Some(6));
        assert!(rep.all_hold());
        assert!(pfaffian_hypersurface_check(5, &cfg).is_err());
        assert!(pfaffian_hypersurface_check(2, &cfg).is_err());
    }
}
