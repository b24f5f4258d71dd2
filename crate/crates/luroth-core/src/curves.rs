//! The determinantal map from partially symmetric tensors to plane
//! curves, inscribed-gon constructions and their incidence certificates,
//! equivariance and infinitesimal-stabilizer checks, and the exact
//! expansion of the determinant of a sum of weighted rank-one symmetric
//! matrices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, PrimeField};
use crate::forms::{
    det_linear_matrix, monomials_of_degree, product, LinearFormMatrix, TernaryForm,
};
use crate::rng::{seeded, SeedRng};
use crate::secant::{
    terracini_dimension, AgreementStatus, GenericityConfig, VarietySpec,
};
use crate::tensor::{DecompSample, Realized, SymTensor3};

/// The n x n matrix of linear forms attached to a partially symmetric
/// tensor: entry (i, j) is sum_a f[a][i][j] x_a.
pub fn linear_matrix_of<F: Field>(f: &SymTensor3<F>) -> LinearFormMatrix<F> {
    let n = f.n();
    let field = f.field().clone();
    let mut m = LinearFormMatrix::zeros(field.clone(), n);
    for i in 0..n {
        for j in 0..n {
            let coeffs = [
                f.slice(0).get(i, j).clone(),
                f.slice(1).get(i, j).clone(),
                f.slice(2).get(i, j).clone(),
            ];
            m.set(i, j, TernaryForm::linear(field.clone(), &coeffs));
        }
    }
    m
}

/// The degree-n plane curve cut out by the determinant of the linear
/// matrix of f.  The zero form is a legitimate value (f lies in the
/// vanishing locus of the map).
pub fn delta<F: Field>(f: &SymTensor3<F>, rng: &mut SeedRng) -> Result<TernaryForm<F>> {
    det_linear_matrix(&linear_matrix_of(f), rng)
}

/// The linear form with coefficient vector u (u_0 x + u_1 y + u_2 z).
pub fn linear_form_of_u<F: Field>(field: &F, u: &[F::Elem; 3]) -> TernaryForm<F> {
    TernaryForm::linear(field.clone(), u)
}

/// For a sample of exactly n summands u_i (x) v_i^2: the determinantal
/// curve equals det(V)^2 times the product of the n linear forms u_i,
/// where V has the v_i as columns.  Returns false (caller resamples)
/// exactly when the sample is degenerate, i.e. the curve vanishes
/// identically while a curve of n lines was expected.
pub fn lines_check<F: Field>(
    field: &F,
    sample: &DecompSample<F>,
    rng: &mut SeedRng,
) -> Result<bool> {
    let DecompSample::SegreVeronese(summands) = sample else {
        return Err(Error::InvalidParameter("lines check needs symmetric summands"));
    };
    let n = sample.n();
    if sample.k() != n {
        return Err(Error::InvalidParameter("lines check needs exactly n summands"));
    }
    let Realized::Sym(f) = sample.realize(field) else { unreachable!() };
    let curve = delta(&f, rng)?;

    let mut v_cols = Matrix::zeros(field.clone(), n, n);
    for (i, s) in summands.iter().enumerate() {
        for r in 0..n {
            v_cols.set(r, i, s.v[r].clone());
        }
    }
    let det_v = v_cols.determinant()?;
    let lines: Vec<_> = summands.iter().map(|s| linear_form_of_u(field, &s.u)).collect();
    let expected = product(field, &lines).scale(&field.mul(&det_v, &det_v));

    Ok(!curve.is_zero() && curve == expected)
}

/// A complete gon: pairwise non-parallel lines meeting in distinct
/// vertices, no three concurrent (unless constructed unvalidated).
#[derive(Clone, Debug)]
pub struct GonConfig<F: Field> {
    lines: Vec<TernaryForm<F>>,
    /// One projective point per unordered pair of edges, with the pair.
    vertices: Vec<([F::Elem; 3], (usize, usize))>,
}

/// Projective point of intersection of two lines: the cross product of
/// their coefficient vectors; zero exactly when the lines coincide or
/// are parallel (proportional coefficients).
fn cross<F: Field>(field: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    let det2 = |i: usize, j: usize| {
        field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]))
    };
    [det2(1, 2), field.neg(&det2(0, 2)), det2(0, 1)]
}

fn is_zero_vec3<F: Field>(field: &F, v: &[F::Elem; 3]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

fn coeffs_of_line<F: Field>(field: &F, l: &TernaryForm<F>) -> Result<[F::Elem; 3]> {
    if l.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, found: l.degree() });
    }
    Ok([
        l.coeff(&[1, 0, 0]),
        l.coeff(&[0, 1, 0]),
        l.coeff(&[0, 0, 1]),
    ])
    .and_then(|c| {
        if is_zero_vec3(field, &c) {
            Err(Error::ZeroVector)
        } else {
            Ok(c)
        }
    })
}

impl<F: Field> GonConfig<F> {
    /// Build the gon and validate completeness: all pairwise vertices
    /// exist, are projectively distinct, and each lies on exactly its two
    /// defining edges (no three edges concurrent).
    pub fn new(field: &F, lines: Vec<TernaryForm<F>>) -> Result<Self> {
        let gon = Self::new_unvalidated(field, lines)?;
        for (idx, (pt, (p, q))) in gon.vertices.iter().enumerate() {
            for (other, (pt2, _)) in gon.vertices.iter().enumerate() {
                if other > idx && is_zero_vec3(field, &cross(field, pt, pt2)) {
                    return Err(Error::InvalidParameter("gon has coincident vertices"));
                }
            }
            for (e, l) in gon.lines.iter().enumerate() {
                let on_edge = field.is_zero(&l.evaluate(pt));
                if on_edge != (e == *p || e == *q) {
                    return Err(Error::InvalidParameter("gon has three concurrent edges"));
                }
            }
        }
        Ok(gon)
    }

    /// Build the gon requiring only pairwise non-parallel edges; vertices
    /// may coincide (used to exhibit how degenerate gons fail downstream
    /// rank checks).
    pub fn new_unvalidated(field: &F, lines: Vec<TernaryForm<F>>) -> Result<Self> {
        let coeffs: Vec<[F::Elem; 3]> = lines
            .iter()
            .map(|l| coeffs_of_line(field, l))
            .collect::<Result<_>>()?;
        let mut vertices = Vec::new();
        for p in 0..lines.len() {
            for q in p + 1..lines.len() {
                let pt = cross(field, &coeffs[p], &coeffs[q]);
                if is_zero_vec3(field, &pt) {
                    return Err(Error::InvalidParameter("gon has parallel or equal edges"));
                }
                vertices.push((pt, (p, q)));
            }
        }
        Ok(GonConfig { lines, vertices })
    }

    pub fn edge_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[TernaryForm<F>] {
        &self.lines
    }

    pub fn vertices(&self) -> &[([F::Elem; 3], (usize, usize))] {
        &self.vertices
    }
}

/// A determinantal curve together with the complete gon inscribed in it
/// and the sample that produced both.
#[derive(Clone, Debug)]
pub struct CurveWithGon<F: Field> {
    pub curve: TernaryForm<F>,
    pub gon: GonConfig<F>,
    pub sample: DecompSample<F>,
    /// Exact evaluation of the curve at every gon vertex gave zero.
    pub vertices_vanish: bool,
    /// The curve is identically zero (the tensor maps into the vanishing
    /// locus); the incidence statement is then vacuous.
    pub in_delta_kernel: bool,
}

/// From a sample of n + 1 summands u_i (x) v_i^2 whose u_i span a
/// complete (n+1)-gon, produce the degree-n determinantal curve and
/// certify that it passes through every vertex of the gon.  The vanishing
/// is unconditional: at a vertex two of the weights u_i(x) vanish, so the
/// evaluated matrix is a sum of at most n - 1 rank-one terms.
pub fn darboux_certificate<F: Field>(
    field: &F,
    sample: &DecompSample<F>,
    rng: &mut SeedRng,
) -> Result<CurveWithGon<F>> {
    let DecompSample::SegreVeronese(summands) = sample else {
        return Err(Error::InvalidParameter("certificate needs symmetric summands"));
    };
    let n = sample.n();
    if sample.k() != n + 1 {
        return Err(Error::InvalidParameter("certificate needs exactly n + 1 summands"));
    }
    let lines: Vec<_> = summands.iter().map(|s| linear_form_of_u(field, &s.u)).collect();
    let gon = GonConfig::new(field, lines)?;
    let Realized::Sym(f) = sample.realize(field) else { unreachable!() };
    let curve = delta(&f, rng)?;
    let vertices_vanish = gon
        .vertices()
        .iter()
        .all(|(pt, _)| field.is_zero(&curve.evaluate(pt)));
    let in_delta_kernel = curve.is_zero();
    Ok(CurveWithGon { curve, gon, sample: sample.clone(), vertices_vanish, in_delta_kernel })
}

/// Seeded random inscribed-gon certificate, resampling past degenerate
/// gons or identically vanishing curves up to retry_cap times.
pub fn random_darboux<F: Field>(
    field: &F,
    n: usize,
    rng: &mut SeedRng,
    retry_cap: u32,
) -> Result<CurveWithGon<F>> {
    for _ in 0..=retry_cap {
        let sample = DecompSample::random_sym(field, n, n + 1, rng);
        match darboux_certificate(field, &sample, rng) {
            Ok(cert) if !cert.in_delta_kernel => return Ok(cert),
            Ok(_) | Err(Error::InvalidParameter(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateAfterRetries { retries: retry_cap, what: "inscribed-gon certificate" })
}

/// Both routes of the gon determinant identity: the determinant of
/// diag(l_1, ..., l_n) + l_{n+1} J (J all ones) and the elementary
/// expansion sum_i prod_{j != i} l_j over all n + 1 forms.
#[derive(Clone, Debug)]
pub struct GonCurveIdentity<F: Field> {
    pub det: TernaryForm<F>,
    pub expansion: TernaryForm<F>,
}

impl<F: Field> GonCurveIdentity<F> {
    /// Exact coefficient equality of the two routes.
    pub fn holds(&self) -> bool {
        self.det == self.expansion
    }
}

/// Compute the determinant of diag(l_1..l_n) + l_{n+1} J by the generic
/// determinant routine and, independently, the expansion
/// sum_{i=1..n+1} prod_{j != i} l_j; the identity between them holds for
/// every choice of the n + 1 linear forms.
pub fn gon_matrix_curve<F: Field>(
    field: &F,
    lines: &[TernaryForm<F>],
    rng: &mut SeedRng,
) -> Result<GonCurveIdentity<F>> {
    let k = lines.len();
    if k < 2 {
        return Err(Error::InvalidParameter("gon matrix needs at least two forms"));
    }
    let n = k - 1;
    for l in lines {
        if l.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: l.degree() });
        }
    }
    let last = &lines[n];
    let mut m = LinearFormMatrix::zeros(field.clone(), n);
    for i in 0..n {
        for j in 0..n {
            let entry = if i == j { lines[i].add(last)? } else { last.clone() };
            m.set(i, j, entry);
        }
    }
    let det = det_linear_matrix(&m, rng)?;

    let mut expansion = TernaryForm::zero(field.clone(), n);
    for i in 0..=n {
        let others: Vec<_> = (0..=n).filter(|&j| j != i).map(|j| lines[j].clone()).collect();
        expansion = expansion.add(&product(field, &others))?;
    }
    Ok(GonCurveIdentity { det, expansion })
}

/// Rank of the (number of degree-n monomials) x (number of vertices)
/// evaluation matrix of a gon with n + 1 edges; the vertices impose
/// independent conditions on degree-n curves exactly when the rank equals
/// the vertex count.
pub fn independent_conditions<F: Field>(field: &F, gon: &GonConfig<F>) -> usize {
    let n = gon.edge_count() - 1;
    let monos = monomials_of_degree(n);
    let verts = gon.vertices();
    let mut m = Matrix::zeros(field.clone(), monos.len(), verts.len());
    for (r, mono) in monos.iter().enumerate() {
        for (c, (pt, _)) in verts.iter().enumerate() {
            let val = TernaryForm::monomial(field.clone(), *mono, field.one()).evaluate(pt);
            m.set(r, c, val);
        }
    }
    m.rank()
}

/// Exact equivariance of the determinantal curve under the slicewise
/// congruence action: the curve of (g P_a g^t)_a equals det(g)^2 times
/// the curve of f, coefficient for coefficient.  Errors on singular g.
pub fn delta_equivariance<F: Field>(
    f: &SymTensor3<F>,
    g: &Matrix<F>,
    rng: &mut SeedRng,
) -> Result<bool> {
    let field = f.field().clone();
    let det_g = g.determinant()?;
    if field.is_zero(&det_g) {
        return Err(Error::Singular);
    }
    let gt = g.transpose();
    let moved = SymTensor3::new([
        g.matmul(f.slice(0)).matmul(&gt),
        g.matmul(f.slice(1)).matmul(&gt),
        g.matmul(f.slice(2)).matmul(&gt),
    ])?;
    let lhs = delta(&moved, rng)?;
    let rhs = delta(f, rng)?.scale(&field.mul(&det_g, &det_g));
    Ok(lhs == rhs)
}

/// Dimension of the infinitesimal stabilizer of f inside the trace-zero
/// matrices: solutions A of A^t P_a + P_a A = 0 for all three slices,
/// tr A = 0.  Zero for generic f (finite stabilizer); n^2 - 1 for f = 0;
/// C(n, 2) when every slice is the identity (skew matrices).
pub fn infinitesimal_stabilizer_dim<F: Field>(f: &SymTensor3<F>) -> usize {
    let field = f.field().clone();
    let n = f.n();
    let unknowns = n * n;
    let mut m = Matrix::zeros(field.clone(), 3 * unknowns + 1, unknowns);
    let mut row = 0;
    for a in 0..3 {
        let p = f.slice(a);
        for i in 0..n {
            for j in 0..n {
                // Coefficient of A_{rc} in (A^t P_a + P_a A)_{ij}:
                // [c = i] P_a[r][j] + [c = j] P_a[i][r].
                for r in 0..n {
                    let col_i = r * n + i;
                    let cur = m.get(row, col_i).clone();
                    m.set(row, col_i, field.add(&cur, p.get(r, j)));
                    let col_j = r * n + j;
                    let cur = m.get(row, col_j).clone();
                    m.set(row, col_j, field.add(&cur, p.get(i, r)));
                }
                row += 1;
            }
        }
    }
    for d in 0..n {
        m.set(row, d * n + d, field.one());
    }
    unknowns - m.rank()
}

/// Both routes of the rank-one expansion: for k linear forms r_i and a
/// k x n scalar matrix H with rows h_i, the determinantal curve of
/// sum_i r_i (x) h_i^2 equals sum over n-subsets I of det(H_I)^2
/// prod_{i in I} r_i, exactly.  For k < n both sides are identically
/// zero.
pub fn jumping_expansion<F: Field>(
    field: &F,
    r: &[TernaryForm<F>],
    h: &Matrix<F>,
    rng: &mut SeedRng,
) -> Result<(TernaryForm<F>, TernaryForm<F>)> {
    let k = r.len();
    let n = h.cols();
    if h.rows() != k {
        return Err(Error::Shape("need one matrix row per linear form".into()));
    }
    for l in r {
        if l.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: l.degree() });
        }
    }

    // Route 1: realize the tensor with slices sum_i r_i[x_a] h_i h_i^t
    // and take its determinantal curve.
    let mut slices = [0, 1, 2].map(|_| Matrix::zeros(field.clone(), n, n));
    let axes: [crate::forms::Mono; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for (i, form) in r.iter().enumerate() {
        for (a, axis) in axes.iter().enumerate() {
            let c = form.coeff(axis);
            for p in 0..n {
                for q in 0..n {
                    let t = field.mul(&c, &field.mul(h.get(i, p), h.get(i, q)));
                    let cur = slices[a].get(p, q).clone();
                    slices[a].set(p, q, field.add(&cur, &t));
                }
            }
        }
    }
    let route1 = delta(&SymTensor3::new(slices)?, rng)?;

    // Route 2: the subset expansion.
    let mut route2 = TernaryForm::zero(field.clone(), n);
    if k >= n {
        for subset in combinations(k, n) {
            let sub = h.select_rows(&subset);
            let minor = sub.determinant()?;
            let weight = field.mul(&minor, &minor);
            if field.is_zero(&weight) {
                continue;
            }
            let forms: Vec<_> = subset.iter().map(|&i| r[i].clone()).collect();
            route2 = route2.add(&product(field, &forms).scale(&weight))?;
        }
    }
    Ok((route1, route2))
}

/// All n-element subsets of {0, ..., k-1} in lexicographic order.
pub(crate) fn combinations(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > k {
        return out;
    }
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next combination.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + k - n {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Dimension bookkeeping for the locus of inscribed-gon curves: the
/// image of the (n+1)-st secant under the determinantal map, computed as
/// its projective dimension minus the generic fiber dimension n^2 - 1
/// (valid because the generic infinitesimal stabilizer is zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxLocusReport {
    pub n: usize,
    pub sigma_projective: usize,
    pub fiber_dim: usize,
    pub image_dim: usize,
    pub expected_dim: usize,
    pub generic_stabilizer_dim: usize,
    pub status: AgreementStatus,
    pub matches: bool,
}

/// Expected image dimension: 13 at n = 4 (the hypersurface-defect case),
/// 3n + 2 for n >= 5.
pub fn expected_darboux_dim(n: usize) -> usize {
    if n == 4 {
        13
    } else {
        3 * n + 2
    }
}

pub fn darboux_locus_dims(n: usize, cfg: &GenericityConfig) -> Result<DarbouxLocusReport> {
    if n < 4 {
        return Err(Error::InvalidParameter("locus dimensions need n >= 4"));
    }
    let rep = terracini_dimension(VarietySpec::SegreVeronese { n }, n + 1, cfg)?;
    let sigma_projective = rep.computed_projective();
    let fiber_dim = n * n - 1;

    // The fiber count is valid only if a generic point has a
    // zero-dimensional stabilizer; certify on a seeded sample.
    let (p, seed) = *cfg.pairs().first().ok_or(Error::InvalidParameter("empty config"))?;
    let field = PrimeField::new(p)?;
    let mut rng = seeded(seed);
    let Realized::Sym(f) = DecompSample::random_sym(&field, n, n + 1, &mut rng).realize(&field)
    else {
        unreachable!()
    };
    let generic_stabilizer_dim = infinitesimal_stabilizer_dim(&f);

    let image_dim = sigma_projective - fiber_dim;
    let expected_dim = expected_darboux_dim(n);
    let matches = image_dim == expected_dim
        && generic_stabilizer_dim == 0
        && rep.status == AgreementStatus::Agreed;
    Ok(DarbouxLocusReport {
        n,
        sigma_projective,
        fiber_dim,
        image_dim,
        expected_dim,
        generic_stabilizer_dim,
        status: rep.status,
        matches,
    })
}

/// Seeded random symmetric tensor with k rank-one summands, unwrapped.
pub fn random_sym_tensor<F: Field>(
    field: &F,
    n: usize,
    k: usize,
    rng: &mut SeedRng,
) -> SymTensor3<F> {
    let Realized::Sym(f) = DecompSample::random_sym(field, n, k, rng).realize(field) else {
        unreachable!()
    };
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rationals, DEFAULT_PRIMES};
    use crate::forms::restrict_to_pencil;
    use crate::rng::{sample_matrix, sample_nonzero_vec, sample_symmetric};
    use crate::tensor::SymSummand;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIMES[0]).unwrap()
    }

    fn random_lines(f: &PrimeField, count: usize, rng: &mut SeedRng) -> Vec<TernaryForm<PrimeField>> {
        (0..count)
            .map(|_| {
                let u = sample_nonzero_vec(f, 3, rng);
                TernaryForm::linear(*f, &[u[0], u[1], u[2]])
            })
            .collect()
    }

    #[test]
    fn delta_matches_pointwise_determinant_evaluation() {
        let f = fp();
        let mut rng = seeded(50);
        let t = random_sym_tensor(&f, 3, 5, &mut rng);
        let curve = delta(&t, &mut rng).unwrap();
        assert_eq!(curve.degree(), 3);
        let m = linear_matrix_of(&t);
        for _ in 0..20 {
            let p = sample_nonzero_vec(&f, 3, &mut rng);
            let pt = [p[0], p[1], p[2]];
            assert_eq!(curve.evaluate(&pt), m.evaluate_at(&pt).determinant().unwrap());
        }
    }

    #[test]
    fn delta_of_diagonalizable_samples_is_a_product_of_lines() {
        let f = fp();
        for n in [3usize, 4] {
            let mut rng = seeded(51 + n as u64);
            let sample = DecompSample::random_sym(&f, n, n, &mut rng);
            assert!(lines_check(&f, &sample, &mut rng).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn lines_check_accepts_repeated_weights_and_rejects_degenerate_directions() {
        let f = fp();
        let mut rng = seeded(53);
        // Repeated u: the product has a square factor but equality holds.
        let u = sample_nonzero_vec(&f, 3, &mut rng);
        let u = [u[0], u[1], u[2]];
        let summands = vec![
            SymSummand { u: u.clone(), v: vec![f.one(), f.zero(), f.zero()] },
            SymSummand { u: u.clone(), v: vec![f.zero(), f.one(), f.zero()] },
            SymSummand { u: sample_nonzero_vec(&f, 3, &mut rng).try_into().unwrap(), v: vec![f.zero(), f.zero(), f.one()] },
        ];
        let sample = DecompSample::segre_veronese(&f, summands).unwrap();
        assert!(lines_check(&f, &sample, &mut rng).unwrap());

        // Dependent v_i: the curve collapses to zero and the check says
        // resample.
        let dep = vec![
            SymSummand { u: u.clone(), v: vec![f.one(), f.zero(), f.zero()] },
            SymSummand { u: u.clone(), v: vec![f.one(), f.zero(), f.zero()] },
            SymSummand { u, v: vec![f.zero(), f.one(), f.zero()] },
        ];
        let sample = DecompSample::segre_veronese(&f, dep).unwrap();
        assert!(!lines_check(&f, &sample, &mut rng).unwrap());
    }

    #[test]
    fn darboux_certificates_vanish_at_every_vertex() {
        let f = fp();
        for n in [3usize, 4, 5] {
            let mut rng = seeded(60 + n as u64);
            let cert = random_darboux(&f, n, &mut rng, 10).unwrap();
            assert_eq!(cert.curve.degree(), n);
            assert!(!cert.in_delta_kernel);
            assert!(cert.vertices_vanish, "n = {n}");
            assert_eq!(cert.gon.vertices().len(), (n + 1) * n / 2);
        }
    }

    #[test]
    fn vertex_vanishing_is_unconditional_across_seeds() {
        let f = fp();
        for n in 3..=6 {
            for seed in 0..20 {
                let mut rng = seeded(1000 * n as u64 + seed);
                let sample = DecompSample::random_sym(&f, n, n + 1, &mut rng);
                match darboux_certificate(&f, &sample, &mut rng) {
                    Ok(cert) => assert!(cert.vertices_vanish, "n = {n} seed = {seed}"),
                    // A degenerate gon is the only admissible failure.
                    Err(Error::InvalidParameter(_)) => {}
                    Err(e) => panic!("unexpected error {e:?}"),
                }
            }
        }
    }

    #[test]
    fn gon_matrix_identity_holds_for_small_n() {
        let f = fp();
        for n in [3usize, 4, 5] {
            let mut rng = seeded(70 + n as u64);
            let lines = random_lines(&f, n + 1, &mut rng);
            let id = gon_matrix_curve(&f, &lines, &mut rng).unwrap();
            assert!(id.holds(), "n = {n}");
            assert_eq!(id.det.degree(), n);
        }
        // Over the rationals as well.
        let q = Rationals;
        let mut rng = seeded(75);
        let lines: Vec<_> = (0..4)
            .map(|_| {
                let u = sample_nonzero_vec(&q, 3, &mut rng);
                TernaryForm::linear(q.clone(), &[u[0].clone(), u[1].clone(), u[2].clone()])
            })
            .collect();
        assert!(gon_matrix_curve(&q, &lines, &mut rng).unwrap().holds());
    }

    #[test]
    fn gon_vertices_impose_independent_conditions() {
        let f = fp();
        for n in [4usize, 5] {
            let mut rng = seeded(80 + n as u64);
            let gon = GonConfig::new(&f, random_lines(&f, n + 1, &mut rng)).unwrap();
            let rank = independent_conditions(&f, &gon);
            assert_eq!(rank, (n + 1) * n / 2, "n = {n}");
        }
    }

    #[test]
    fn concurrent_edges_are_rejected_and_lose_rank() {
        let f = fp();
        let mut rng = seeded(82);
        // Three concurrent lines through (0 : 0 : 1): a x + b y.
        let mut lines = Vec::new();
        for _ in 0..3 {
            let c = sample_nonzero_vec(&f, 2, &mut rng);
            lines.push(TernaryForm::linear(f, &[c[0], c[1], f.zero()]));
        }
        lines.extend(random_lines(&f, 2, &mut rng));
        assert!(matches!(
            GonConfig::new(&f, lines.clone()),
            Err(Error::InvalidParameter(_))
        ));
        let gon = GonConfig::new_unvalidated(&f, lines).unwrap();
        let n = 4;
        assert!(independent_conditions(&f, &gon) < (n + 1) * n / 2);
    }

    #[test]
    fn equivariance_holds_exactly() {
        let f = fp();
        let mut rng = seeded(90);
        let t = random_sym_tensor(&f, 4, 6, &mut rng);
        // Identity.
        let id = Matrix::identity(f, 4);
        assert!(delta_equivariance(&t, &id, &mut rng).unwrap());
        // diag(2, 1, 1, 1): determinant factor 4 checked inside.
        let mut d = Matrix::identity(f, 4);
        d.set(0, 0, f.from_i64(2));
        assert!(delta_equivariance(&t, &d, &mut rng).unwrap());
        // Random invertible.
        let g = crate::rng::sample_invertible(&f, 4, &mut rng, 10).unwrap();
        assert!(delta_equivariance(&t, &g, &mut rng).unwrap());
        // Singular g errors.
        let z = Matrix::zeros(f, 4, 4);
        assert_eq!(delta_equivariance(&t, &z, &mut rng).unwrap_err(), Error::Singular);
    }

    #[test]
    fn stabilizer_dimensions_for_the_three_reference_cases() {
        let f = fp();
        let mut rng = seeded(91);
        let generic = random_sym_tensor(&f, 4, 6, &mut rng);
        assert_eq!(infinitesimal_stabilizer_dim(&generic), 0);

        let zero = SymTensor3::zero(f, 4);
        assert_eq!(infinitesimal_stabilizer_dim(&zero), 15);

        let id = Matrix::identity(f, 4);
        let all_id = SymTensor3::new([id.clone(), id.clone(), id]).unwrap();
        assert_eq!(infinitesimal_stabilizer_dim(&all_id), 6);
    }

    #[test]
    fn stabilizer_over_rationals_matches_prime_field() {
        let q = Rationals;
        let mut rng = seeded(92);
        let t = random_sym_tensor(&q, 3, 4, &mut rng);
        assert_eq!(infinitesimal_stabilizer_dim(&t), 0);
        let zero = SymTensor3::zero(q, 3);
        assert_eq!(infinitesimal_stabilizer_dim(&zero), 8);
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 5), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(combinations(3, 4), Vec::<Vec<usize>>::new());
        assert_eq!(combinations(8, 6).len(), 28);
    }

    #[test]
    fn jumping_expansion_single_subset_case() {
        let f = fp();
        let mut rng = seeded(93);
        let r = random_lines(&f, 3, &mut rng);
        let h = Matrix::identity(f, 3);
        let (a, b) = jumping_expansion(&f, &r, &h, &mut rng).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, product(&f, &r));
    }

    #[test]
    fn jumping_expansion_agrees_on_seeded_data() {
        let f = fp();
        for (n, k) in [(3usize, 4usize), (4, 5), (6, 8)] {
            let mut rng = seeded(100 + (10 * n + k) as u64);
            let r = random_lines(&f, k, &mut rng);
            let h = sample_matrix(&f, k, n, &mut rng);
            let (a, b) = jumping_expansion(&f, &r, &h, &mut rng).unwrap();
            assert_eq!(a, b, "n = {n}, k = {k}");
            assert_eq!(a.degree(), n);
            assert!(!a.is_zero());
        }
        // Rational cross-check at small size.
        let q = Rationals;
        let mut rng = seeded(104);
        let r: Vec<_> = (0..4)
            .map(|_| {
                let u = sample_nonzero_vec(&q, 3, &mut rng);
                TernaryForm::linear(q.clone(), &[u[0].clone(), u[1].clone(), u[2].clone()])
            })
            .collect();
        let h = sample_matrix(&q, 4, 3, &mut rng);
        let (a, b) = jumping_expansion(&q, &r, &h, &mut rng).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn jumping_expansion_below_rank_threshold_is_zero() {
        let f = fp();
        let mut rng = seeded(105);
        let r = random_lines(&f, 2, &mut rng);
        let h = sample_matrix(&f, 2, 4, &mut rng);
        let (a, b) = jumping_expansion(&f, &r, &h, &mut rng).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn pencil_restriction_of_delta_has_degree_n() {
        // The determinantal map has degree n in the tensor, so along a
        // generic pencil f0 + t f1 any evaluation functional of the curve
        // is a degree-n polynomial in t.
        let f = fp();
        let n = 4;
        let mut rng = seeded(106);
        let f0 = random_sym_tensor(&f, n, 6, &mut rng);
        let f1 = SymTensor3::new([
            sample_symmetric(&f, n, &mut rng),
            sample_symmetric(&f, n, &mut rng),
            sample_symmetric(&f, n, &mut rng),
        ])
        .unwrap();
        let p = sample_nonzero_vec(&f, 3, &mut rng);
        let pt = [p[0], p[1], p[2]];
        let m0 = linear_matrix_of(&f0).evaluate_at(&pt);
        let m1 = linear_matrix_of(&f1).evaluate_at(&pt);
        let deg = restrict_to_pencil(&f, n, |t| {
            m0.add(&m1.scale(t)).determinant().unwrap()
        })
        .unwrap();
        assert_eq!(deg, Some(n));
    }

    #[test]
    fn locus_dimension_bookkeeping_matches_known_values() {
        let cfg = GenericityConfig::default();
        let rep = darboux_locus_dims(4, &cfg).unwrap();
        assert_eq!((rep.sigma_projective, rep.fiber_dim, rep.image_dim), (28, 15, 13));
        assert!(rep.matches);
        let rep = darboux_locus_dims(5, &cfg).unwrap();
        assert_eq!(rep.image_dim, 17);
        assert!(rep.matches);
    }
}
