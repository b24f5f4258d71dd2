//! Homogeneous ternary forms over an exact field, matrices of linear
//! forms, and the two independent determinant routes (symbolic Bareiss
//! over the polynomial ring vs. evaluation + interpolation) that are
//! required to agree.
//!
//! Monomial order: graded lexicographic with x > y > z.  A form stores
//! only nonzero coefficients, so representations are canonical and `==`
//! is semantic equality.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};
use crate::rng::SeedRng;

/// Exponent triple (i, j, k) of x^i y^j z^k.  Within a fixed total degree,
/// the derived tuple order is exactly lex with x > y > z, so graded-lex
/// comparisons of equal-degree monomials are plain `Ord` comparisons.
pub type Mono = [u32; 3];

/// Total degree of a monomial.
pub fn mono_degree(m: &Mono) -> usize {
    (m[0] + m[1] + m[2]) as usize
}

/// Product of two monomials.
pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Componentwise quotient, `None` when not divisible.
pub fn mono_div(a: &Mono, b: &Mono) -> Option<Mono> {
    if a[0] >= b[0] && a[1] >= b[1] && a[2] >= b[2] {
        Some([a[0] - b[0], a[1] - b[1], a[2] - b[2]])
    } else {
        None
    }
}

/// All monomials of total degree d in descending graded-lex order
/// (leading monomial x^d first).  There are C(d+2, 2) of them.
pub fn monomials_of_degree(d: usize) -> Vec<Mono> {
    let d = d as u32;
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Number of degree-d monomials in three variables: C(d+2, 2).
pub fn monomial_count(d: usize) -> usize {
    (d + 2) * (d + 1) / 2
}

/// A homogeneous form of fixed degree in x, y, z.  The zero form of each
/// degree is the empty coefficient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm<F: Field> {
    field: F,
    degree: usize,
    coeffs: BTreeMap<Mono, F::Elem>,
}

impl<F: Field> TernaryForm<F> {
    /// The zero form of the given degree.
    pub fn zero(field: F, degree: usize) -> Self {
        TernaryForm { field, degree, coeffs: BTreeMap::new() }
    }

    /// A single term c * x^i y^j z^k.
    pub fn monomial(field: F, mono: Mono, coeff: F::Elem) -> Self {
        let mut f = Self::zero(field, mono_degree(&mono));
        f.add_term(mono, coeff);
        f
    }

    /// The linear form a*x + b*y + c*z.
    pub fn linear(field: F, coeffs: &[F::Elem; 3]) -> Self {
        let mut f = Self::zero(field, 1);
        f.add_term([1, 0, 0], coeffs[0].clone());
        f.add_term([0, 1, 0], coeffs[1].clone());
        f.add_term([0, 0, 1], coeffs[2].clone());
        f
    }

    /// Build a degree-d form from a dense coefficient vector listed in the
    /// canonical descending monomial order (length C(d+2, 2)).
    pub fn from_coeff_vec(field: F, degree: usize, coeffs: &[F::Elem]) -> Result<Self> {
        let monos = monomials_of_degree(degree);
        if coeffs.len() != monos.len() {
            return Err(Error::Shape("coefficient vector length".into()));
        }
        let mut f = Self::zero(field, degree);
        for (m, c) in monos.into_iter().zip(coeffs.iter()) {
            f.add_term(m, c.clone());
        }
        Ok(f)
    }

    /// Dense coefficient vector in canonical descending monomial order.
    pub fn coeff_vec(&self) -> Vec<F::Elem> {
        monomials_of_degree(self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Mono) -> F::Elem {
        self.coeffs.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F::Elem)> {
        self.coeffs.iter().rev()
    }

    /// Leading (largest) monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(Mono, F::Elem)> {
        self.coeffs.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// Add c * mono into the form, keeping the representation canonical
    /// (zero coefficients are never stored).  Panics if the monomial's
    /// degree does not match the form's.
    pub fn add_term(&mut self, mono: Mono, c: F::Elem) {
        assert_eq!(mono_degree(&mono), self.degree, "term degree mismatch");
        if self.field.is_zero(&c) {
            return;
        }
        let f = self.field.clone();
        match self.coeffs.get_mut(&mono) {
            Some(existing) => {
                let sum = f.add(existing, &c);
                if f.is_zero(&sum) {
                    self.coeffs.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(mono, c);
            }
        }
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.degree);
        for (m, v) in &self.coeffs {
            out.add_term(*m, self.field.mul(v, c));
        }
        out
    }

    /// Product; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.degree + other.degree);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                out.add_term(mono_mul(ma, mb), f.mul(ca, cb));
            }
        }
        out
    }

    /// Exact division: returns q with self = q * divisor, or an error if
    /// the division is not exact.  Within Bareiss elimination over the
    /// polynomial ring the division is always exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let f = self.field.clone();
        let Some((dm, dc)) = divisor.leading_term() else {
            return Err(Error::InvalidParameter("division by the zero form"));
        };
        if self.degree < divisor.degree {
            return Err(Error::DegreeMismatch { expected: divisor.degree, found: self.degree });
        }
        let qdeg = self.degree - divisor.degree;
        let mut quotient = Self::zero(f.clone(), qdeg);
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(qm) = mono_div(&rm, &dm) else {
                return Err(Error::InvalidParameter("non-exact polynomial division"));
            };
            let qc = f.div(&rc, &dc).expect("leading coefficient is nonzero");
            quotient.add_term(qm, qc.clone());
            // rem -= (qc * qm) * divisor
            for (m, c) in &divisor.coeffs {
                rem.add_term(mono_mul(&qm, m), f.neg(&f.mul(&qc, c)));
            }
        }
        Ok(quotient)
    }

    /// Evaluate at a point of F^3.
    pub fn evaluate(&self, p: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.coeffs {
            let mut term = c.clone();
            for (var, &e) in p.iter().zip(m.iter()) {
                if e > 0 {
                    term = f.mul(&term, &f.pow(var, e as u64));
                }
            }
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// Projective comparison: true when self = c * other for some nonzero
    /// scalar c (two zero forms of equal degree also compare equal).
    pub fn equal_up_to_scalar(&self, other: &Self) -> bool {
        if self.degree != other.degree {
            return false;
        }
        match (self.leading_term(), other.leading_term()) {
            (None, None) => true,
            (Some(_), None) | (None, Some(_)) => false,
            (Some((ma, ca)), Some((mb, cb))) => {
                if ma != mb {
                    return false;
                }
                // self * lc(other) == other * lc(self)
                self.scale(&cb) == other.scale(&ca)
            }
        }
    }
}

/// Product of a list of forms (empty product = the degree-0 constant 1).
pub fn product<F: Field>(field: &F, forms: &[TernaryForm<F>]) -> TernaryForm<F> {
    let mut acc = TernaryForm::monomial(field.clone(), [0, 0, 0], field.one());
    for f in forms {
        acc = acc.mul(f);
    }
    acc
}

/// Square matrix whose entries are linear ternary forms (zero entries are
/// degree-1 zero forms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix<F: Field> {
    field: F,
    size: usize,
    entries: Vec<TernaryForm<F>>, // row-major, length size * size
}

impl<F: Field> LinearFormMatrix<F> {
    pub fn new(field: F, size: usize, entries: Vec<TernaryForm<F>>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Shape("linear-form matrix entry count".into()));
        }
        if entries.iter().any(|e| e.degree() != 1) {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        Ok(LinearFormMatrix { field, size, entries })
    }

    pub fn zeros(field: F, size: usize) -> Self {
        let entries = vec![TernaryForm::zero(field.clone(), 1); size * size];
        LinearFormMatrix { field, size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &TernaryForm<F> {
        assert!(i < self.size && j < self.size);
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TernaryForm<F>) {
        assert!(i < self.size && j < self.size);
        assert_eq!(v.degree(), 1, "entries must be linear forms");
        self.entries[i * self.size + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Scalar matrix of entry values at a point.
    pub fn evaluate_at(&self, p: &[F::Elem; 3]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.field.clone(), self.size, self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m.set(i, j, self.get(i, j).evaluate(p));
            }
        }
        m
    }

    /// Block-diagonal join (test utility for the multiplicativity law).
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        assert!(a.field == b.field, "mixed field contexts");
        let size = a.size + b.size;
        let mut m = Self::zeros(a.field.clone(), size);
        for i in 0..a.size {
            for j in 0..a.size {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.size {
            for j in 0..b.size {
                m.set(a.size + i, a.size + j, b.get(i, j).clone());
            }
        }
        m
    }
}

/// Determinant of a linear-form matrix by Bareiss elimination carried out
/// symbolically in F[x, y, z].  Every division is by the previous pivot
/// and is exact.  Intended for size <= 6; larger sizes work but grow.
pub fn det_symbolic<F: Field>(m: &LinearFormMatrix<F>) -> Result<TernaryForm<F>> {
    let field = m.field.clone();
    let n = m.size;
    if n == 0 {
        return Ok(TernaryForm::monomial(field, [0, 0, 0], m.field.one()));
    }
    let mut a: Vec<Vec<TernaryForm<F>>> =
        (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut negated = false;
    let mut prev = TernaryForm::monomial(field.clone(), [0, 0, 0], field.one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(pr) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(TernaryForm::zero(field, n));
            };
            a.swap(k, pr);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]))?;
                a[i][j] = if num.is_zero() {
                    TernaryForm::zero(field.clone(), num.degree() - prev.degree())
                } else {
                    num.exact_div(&prev)?
                };
            }
            a[i][k] = TernaryForm::zero(field.clone(), a[i][k].degree());
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negated { det.neg() } else { det })
}

/// How many times the interpolation node set may be redrawn before the
/// evaluation system is declared degenerate.
pub const INTERPOLATION_RETRY_CAP: u32 = 5;

/// Determinant of a linear-form matrix by evaluation at C(n+2, 2) seeded
/// random points followed by solving the (square) monomial-evaluation
/// system.  The node set is resampled up to [`INTERPOLATION_RETRY_CAP`]
/// times if it fails to be unisolvent; a persistent failure is a hard
/// error.
pub fn det_interpolated<F: Field>(
    m: &LinearFormMatrix<F>,
    rng: &mut SeedRng,
) -> Result<TernaryForm<F>> {
    let field = m.field.clone();
    let n = m.size;
    let monos = monomials_of_degree(n);
    let count = monos.len();
    for _ in 0..=INTERPOLATION_RETRY_CAP {
        let points: Vec<[F::Elem; 3]> = (0..count)
            .map(|_| {
                let v = crate::rng::sample_nonzero_vec(&field, 3, rng);
                [v[0].clone(), v[1].clone(), v[2].clone()]
            })
            .collect();
        let mut system = Matrix::zeros(field.clone(), count, count);
        for (s, p) in points.iter().enumerate() {
            for (c, mono) in monos.iter().enumerate() {
                let v = TernaryForm::monomial(field.clone(), *mono, field.one()).evaluate(p);
                system.set(s, c, v);
            }
        }
        if system.rank() < count {
            continue; // nodes fail to separate degree-n forms; redraw
        }
        let values: Result<Vec<F::Elem>> = points
            .iter()
            .map(|p| m.evaluate_at(p).determinant())
            .collect();
        let sol = system
            .solve(&values?)?
            .expect("full-rank square system is consistent");
        return TernaryForm::from_coeff_vec(field, n, &sol);
    }
    Err(Error::DegenerateAfterRetries {
        retries: INTERPOLATION_RETRY_CAP,
        what: "unisolvent interpolation node set",
    })
}

/// Determinant of a linear-form matrix, computed by evaluation +
/// interpolation and — for size <= 6 — cross-checked against the fully
/// symbolic Bareiss route.  A disagreement between the two routes is an
/// internal contract violation and panics.
pub fn det_linear_matrix<F: Field>(
    m: &LinearFormMatrix<F>,
    rng: &mut SeedRng,
) -> Result<TernaryForm<F>> {
    let interp = det_interpolated(m, rng)?;
    if m.size <= 6 {
        let sym = det_symbolic(m)?;
        assert!(
            sym == interp,
            "dual-route determinant disagreement (symbolic vs interpolated)"
        );
    }
    Ok(interp)
}

/// Degree in t of the univariate polynomial t -> eval(t), known a priori
/// to have degree <= max_degree.  Exact interpolation at the nodes
/// t = 0, 1, ..., max_degree; `None` when the restriction is identically
/// zero (a degenerate pencil the caller should resample).
pub fn restrict_to_pencil<F: Field>(
    field: &F,
    max_degree: usize,
    mut eval: impl FnMut(&F::Elem) -> F::Elem,
) -> Result<Option<usize>> {
    let coeffs = univariate_coeffs(field, max_degree, &mut eval)?;
    Ok(coeffs.iter().rposition(|c| !field.is_zero(c)))
}

/// Coefficients c_0..c_max of the univariate polynomial t -> eval(t)
/// (degree <= max_degree), by solving the Vandermonde system at the nodes
/// t = 0..=max_degree.  Requires the field to have more than max_degree
/// elements, which every supported field does.
pub fn univariate_coeffs<F: Field>(
    field: &F,
    max_degree: usize,
    eval: &mut impl FnMut(&F::Elem) -> F::Elem,
) -> Result<Vec<F::Elem>> {
    let count = max_degree + 1;
    let mut vander = Matrix::zeros(field.clone(), count, count);
    let mut values = Vec::with_capacity(count);
    for s in 0..count {
        let t = field.from_i64(s as i64);
        for e in 0..count {
            vander.set(s, e, field.pow(&t, e as u64));
        }
        values.push(eval(&t));
    }
    Ok(vander
        .solve(&values)?
        .expect("Vandermonde systems at distinct nodes are invertible"))
}
