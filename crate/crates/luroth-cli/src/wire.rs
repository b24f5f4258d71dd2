//! JSON wire formats: scalars, matrices, ternary forms, tensors and
//! decomposable samples.
//!
//! Scalars are JSON numbers (prime-field residues) or strings
//! (`"num"` / `"num/den"` exact rationals).  A ternary form is
//! `{"degree": d, "coeffs": [[i, j, k, value], …]}` with exponent
//! triples in descending graded-lexicographic order and zero
//! coefficients omitted.  A tensor is
//! `{"kind": "segre"|"sym", "slices": [A, B, C]}` (three square
//! matrices, row-major) or `{"kind": …, "summands": […]}` with
//! summands `{"u": [3 entries], "v": […]}` plus `"w"` for the fully
//! decomposable kind.

use luroth_core::exactalg::{BigInt, BigRational, Field, Matrix, PrimeField, Rationals};
use luroth_core::forms::{monomials_of_degree, TernaryForm};
use luroth_core::tensor::{
    DecompSample, SegreSummand, SymSummand, SymTensor3, Tensor3,
};
use serde_json::{json, Value};

/// Errors from parsing user-supplied JSON; surfaced as usage errors.
pub type WireResult<T> = Result<T, String>;

/// A field whose elements have a JSON representation.
pub trait WireField: Field {
    fn elem_to_json(e: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> WireResult<Self::Elem>;
    /// Echo of the coefficient field for reports.
    fn describe(&self) -> Value;
}

fn parse_fraction_parts(s: &str) -> WireResult<(&str, &str)> {
    match s.split_once('/') {
        Some((a, b)) => Ok((a.trim(), b.trim())),
        None => Ok((s.trim(), "1")),
    }
}

impl WireField for PrimeField {
    fn elem_to_json(e: &u64) -> Value {
        Value::from(*e)
    }

    fn elem_from_json(&self, v: &Value) -> WireResult<u64> {
        match v {
            Value::Number(n) => {
                if let Some(u) = n.as_u64() {
                    return Ok(u % self.modulus());
                }
                if let Some(i) = n.as_i64() {
                    return Ok(self.from_i64(i));
                }
                Err(format!("scalar {n} is not an integer"))
            }
            Value::String(s) => {
                let (num, den) = parse_fraction_parts(s)?;
                let num: i64 =
                    num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
                let den: i64 =
                    den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
                let d = self.from_i64(den);
                self.div(&self.from_i64(num), &d)
                    .ok_or_else(|| format!("denominator of {s:?} is zero in F_p"))
            }
            other => Err(format!("scalar must be a number or string, got {other}")),
        }
    }

    fn describe(&self) -> Value {
        json!({"kind": "prime", "p": self.modulus()})
    }
}

impl WireField for Rationals {
    fn elem_to_json(e: &BigRational) -> Value {
        if e.denom() == &BigInt::from(1) {
            Value::String(e.numer().to_string())
        } else {
            Value::String(format!("{}/{}", e.numer(), e.denom()))
        }
    }

    fn elem_from_json(&self, v: &Value) -> WireResult<BigRational> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| format!("scalar {n} is not an integer")),
            Value::String(s) => {
                let (num, den) = parse_fraction_parts(s)?;
                let num: BigInt =
                    num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
                let den: BigInt =
                    den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
                if den == BigInt::from(0) {
                    return Err(format!("denominator of {s:?} is zero"));
                }
                Ok(BigRational::new(num, den))
            }
            other => Err(format!("scalar must be a number or string, got {other}")),
        }
    }

    fn describe(&self) -> Value {
        json!({"kind": "rational"})
    }
}

pub fn vec_to_json<F: WireField>(v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(F::elem_to_json).collect())
}

pub fn vec_from_json<F: WireField>(
    field: &F,
    v: &Value,
    what: &str,
) -> WireResult<Vec<F::Elem>> {
    let arr = v.as_array().ok_or_else(|| format!("{what} must be an array"))?;
    arr.iter().map(|e| field.elem_from_json(e)).collect()
}

pub fn matrix_to_json<F: WireField>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|i| vec_to_json::<F>(m.row(i))).collect())
}

pub fn matrix_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<Matrix<F>> {
    let arr = v.as_array().ok_or("matrix must be an array of rows")?;
    if arr.is_empty() {
        return Err("matrix must have at least one row".into());
    }
    let rows: Vec<Vec<F::Elem>> = arr
        .iter()
        .map(|r| vec_from_json(field, r, "matrix row"))
        .collect::<WireResult<_>>()?;
    Matrix::from_rows(field.clone(), rows).map_err(|e| format!("bad matrix: {e}"))
}

pub fn form_to_json<F: WireField>(f: &TernaryForm<F>) -> Value {
    let coeffs: Vec<Value> = monomials_of_degree(f.degree())
        .iter()
        .filter_map(|m| {
            let c = f.coeff(m);
            if f.field().is_zero(&c) {
                None
            } else {
                Some(json!([m[0], m[1], m[2], F::elem_to_json(&c)]))
            }
        })
        .collect();
    json!({"degree": f.degree(), "coeffs": coeffs})
}

pub fn form_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<TernaryForm<F>> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or("form needs an integer \"degree\"")? as usize;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or("form needs a \"coeffs\" array")?;
    let mut form = TernaryForm::zero(field.clone(), degree);
    for entry in coeffs {
        let parts = entry.as_array().filter(|a| a.len() == 4).ok_or_else(|| {
            format!("coefficient entry must be [i, j, k, value], got {entry}")
        })?;
        let mut mono = [0u32; 3];
        for (slot, p) in mono.iter_mut().zip(&parts[..3]) {
            *slot = p
                .as_u64()
                .ok_or_else(|| format!("bad exponent in {entry}"))?
                as u32;
        }
        if (mono[0] + mono[1] + mono[2]) as usize != degree {
            return Err(format!("exponents {mono:?} do not sum to degree {degree}"));
        }
        form.add_term(mono, field.elem_from_json(&parts[3])?);
    }
    Ok(form)
}

fn summand_vec3<F: WireField>(field: &F, v: &Value, what: &str) -> WireResult<[F::Elem; 3]> {
    let e = vec_from_json(field, v, what)?;
    let [a, b, c] = <[F::Elem; 3]>::try_from(e)
        .map_err(|_| format!("{what} must have exactly 3 entries"))?;
    Ok([a, b, c])
}

/// The tensor kind tag of an input file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Segre,
    Sym,
}

pub fn tensor_kind(v: &Value) -> WireResult<TensorKind> {
    match v.get("kind").and_then(Value::as_str) {
        Some("segre") => Ok(TensorKind::Segre),
        Some("sym") | Some("segre-veronese") => Ok(TensorKind::Sym),
        Some(other) => Err(format!("unknown tensor kind {other:?}")),
        None => Err("tensor needs a \"kind\" of \"segre\" or \"sym\"".into()),
    }
}

fn three_slices<F: WireField>(field: &F, v: &Value) -> WireResult<[Matrix<F>; 3]> {
    let arr = v
        .get("slices")
        .and_then(Value::as_array)
        .ok_or("tensor needs a \"slices\" array")?;
    if arr.len() != 3 {
        return Err(format!("expected 3 slices, got {}", arr.len()));
    }
    let mut out = Vec::with_capacity(3);
    for s in arr {
        out.push(matrix_from_json(field, s)?);
    }
    Ok(<[Matrix<F>; 3]>::try_from(out).expect("length checked"))
}

fn check_declared_n(v: &Value, n: usize) -> WireResult<()> {
    if let Some(decl) = v.get("n").and_then(Value::as_u64) {
        if decl as usize != n {
            return Err(format!("declared n = {decl} but data has n = {n}"));
        }
    }
    Ok(())
}

/// Parse a decomposable sample (requires `"summands"`).
pub fn sample_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<DecompSample<F>> {
    let kind = tensor_kind(v)?;
    let arr = v
        .get("summands")
        .and_then(Value::as_array)
        .ok_or("expected a \"summands\" array")?;
    if arr.is_empty() {
        return Err("need at least one summand".into());
    }
    let sample = match kind {
        TensorKind::Segre => {
            let mut summands = Vec::with_capacity(arr.len());
            for s in arr {
                summands.push(SegreSummand {
                    u: summand_vec3(field, s.get("u").ok_or("summand needs \"u\"")?, "u")?,
                    v: vec_from_json(field, s.get("v").ok_or("summand needs \"v\"")?, "v")?,
                    w: vec_from_json(field, s.get("w").ok_or("summand needs \"w\"")?, "w")?,
                });
            }
            DecompSample::segre(field, summands).map_err(|e| format!("bad sample: {e}"))?
        }
        TensorKind::Sym => {
            let mut summands = Vec::with_capacity(arr.len());
            for s in arr {
                summands.push(SymSummand {
                    u: summand_vec3(field, s.get("u").ok_or("summand needs \"u\"")?, "u")?,
                    v: vec_from_json(field, s.get("v").ok_or("summand needs \"v\"")?, "v")?,
                });
            }
            DecompSample::segre_veronese(field, summands)
                .map_err(|e| format!("bad sample: {e}"))?
        }
    };
    check_declared_n(v, sample.n())?;
    Ok(sample)
}

/// Parse a fully decomposable (three-slice) tensor from slices or summands.
pub fn segre_tensor_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<Tensor3<F>> {
    if tensor_kind(v)? != TensorKind::Segre {
        return Err("expected kind \"segre\"".into());
    }
    if v.get("slices").is_some() {
        let t = Tensor3::new(three_slices(field, v)?).map_err(|e| format!("bad tensor: {e}"))?;
        check_declared_n(v, t.n())?;
        Ok(t)
    } else {
        match sample_from_json(field, v)?.realize(field) {
            luroth_core::tensor::Realized::Segre(t) => Ok(t),
            _ => unreachable!("kind checked above"),
        }
    }
}

/// Parse a partially symmetric tensor from slices or summands.
pub fn sym_tensor_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<SymTensor3<F>> {
    if tensor_kind(v)? != TensorKind::Sym {
        return Err("expected kind \"sym\"".into());
    }
    if v.get("slices").is_some() {
        let t = SymTensor3::new(three_slices(field, v)?)
            .map_err(|e| format!("bad tensor: {e}"))?;
        check_declared_n(v, t.n())?;
        Ok(t)
    } else {
        match sample_from_json(field, v)?.realize(field) {
            luroth_core::tensor::Realized::Sym(t) => Ok(t),
            _ => unreachable!("kind checked above"),
        }
    }
}

/// Serialize a sample so a report is self-contained and replayable.
pub fn sample_to_json<F: WireField>(sample: &DecompSample<F>) -> Value {
    match sample {
        DecompSample::Segre(summands) => json!({
            "kind": "segre",
            "n": sample.n(),
            "summands": summands
                .iter()
                .map(|s| json!({
                    "u": vec_to_json::<F>(&s.u),
                    "v": vec_to_json::<F>(&s.v),
                    "w": vec_to_json::<F>(&s.w),
                }))
                .collect::<Vec<_>>(),
        }),
        DecompSample::SegreVeronese(summands) => json!({
            "kind": "sym",
            "n": sample.n(),
            "summands": summands
                .iter()
                .map(|s| json!({
                    "u": vec_to_json::<F>(&s.u),
                    "v": vec_to_json::<F>(&s.v),
                }))
                .collect::<Vec<_>>(),
        }),
    }
}

/// Parse `{"lines": [form, …]}`; every form must be linear.
pub fn lines_from_json<F: WireField>(field: &F, v: &Value) -> WireResult<Vec<TernaryForm<F>>> {
    let arr = v
        .get("lines")
        .and_then(Value::as_array)
        .ok_or("expected a \"lines\" array of degree-1 forms")?;
    let lines: Vec<TernaryForm<F>> = arr
        .iter()
        .map(|f| form_from_json(field, f))
        .collect::<WireResult<_>>()?;
    for (i, l) in lines.iter().enumerate() {
        if l.degree() != 1 || l.is_zero() {
            return Err(format!("line {i} must be a nonzero degree-1 form"));
        }
    }
    Ok(lines)
}
