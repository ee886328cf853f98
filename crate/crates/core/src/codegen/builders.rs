use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CodegenError, LogicalVector, PICode};
use crate::combinatorics::{binomial, closest_pair, WeightVector};
use crate::exactnum::{format_rational, sqrt_of_rational, Rational};
use crate::polyid::{repunit, validate_partition_tuple, PartitionPolynomialTuple, RationalPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Sign split of `f = (x-1)^m g`; encodes a qubit.
    TypeA,
    /// Residue classes of `f = (1+…+x^{d-1})^m g`.
    TypeB,
    /// Residue-class code for `g = (1 - s) + s·x`, `s = sin²θ`.
    Theta { sin2: Rational },
    /// Binomial code with Dicke labels spaced `g` apart, `(1+x)^n` weights.
    Gnu { g: usize, n: usize },
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::TypeA => "type_a",
            Construction::TypeB => "type_b",
            Construction::Theta { .. } => "theta",
            Construction::Gnu { .. } => "gnu",
        }
    }
}

/// Parameters of one construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub q: usize,
    pub total: usize,
    pub d: usize,
    pub t: usize,
    pub m: u32,
    pub f: RationalPolynomial,
    pub p: PartitionPolynomialTuple,
    pub construction: Construction,
}

impl CodeSpec {
    /// Builds the spec with the evaluation range of `p` tied to `deg f`.
    pub fn new(
        q: usize,
        total: usize,
        d: usize,
        t: usize,
        m: u32,
        f: RationalPolynomial,
        p_polys: Vec<RationalPolynomial>,
        construction: Construction,
    ) -> Self {
        let range = f.degree();
        Self {
            q,
            total,
            d,
            t,
            m,
            f,
            p: PartitionPolynomialTuple::new(p_polys, total, range),
            construction,
        }
    }

    fn check_shape(&self) -> Result<(), CodegenError> {
        let invalid = |m: String| Err(CodegenError::InvalidSpec(m));
        if self.q < 2 {
            return invalid(format!("q = {} < 2", self.q));
        }
        if self.total < 1 {
            return invalid("N must be positive".into());
        }
        if self.d < 2 {
            return invalid(format!("d = {} < 2", self.d));
        }
        if self.t < 1 {
            return invalid("t must be positive".into());
        }
        if self.m < 1 {
            return invalid("m must be positive".into());
        }
        if self.f.is_zero() {
            return invalid("f is the zero polynomial".into());
        }
        if self.p.q() != self.q {
            return invalid(format!("{} partition polynomials for q = {}", self.p.q(), self.q));
        }
        if self.p.range != self.f.degree() || self.p.total != self.total {
            return invalid("partition tuple range must equal deg f and its total must equal N".into());
        }
        Ok(())
    }
}

/// Dispatches on the construction kind.
pub fn build(spec: &CodeSpec) -> Result<PICode, CodegenError> {
    match &spec.construction {
        Construction::TypeA => build_type_a(spec),
        Construction::TypeB => build_type_b(spec),
        Construction::Theta { sin2 } => {
            build_theta_family(spec.m, spec.d, sin2, &spec.p.polys, spec.q, spec.total, spec.t)
        }
        Construction::Gnu { g, n } => build_gnu(*g, *n, spec.total, spec.t),
    }
}

/// Checks the separation and degree conditions shared by both constructions and
/// returns `p(z)` for `z = 0..=deg f`.
fn partition_labels(spec: &CodeSpec) -> Result<Vec<WeightVector>, CodegenError> {
    let validated = validate_partition_tuple(&spec.p)?;
    let required = 2 * spec.t + 1;
    let labels = validated.weights;
    for (i, a) in labels.iter().enumerate() {
        if let Some(b) = labels[i + 1..].iter().find(|b| *b == a) {
            return Err(CodegenError::DistanceTooSmall {
                a: a.clone(),
                b: b.clone(),
                distance: 0,
                required,
            });
        }
    }
    let (a, b, distance) = closest_pair(&labels)?;
    if distance < required {
        return Err(CodegenError::DistanceTooSmall { a, b, distance, required });
    }
    // deg p_i ≤ (m-1)/(2t), kept in integers
    if 2 * spec.t * validated.theta > spec.m as usize - 1 {
        return Err(CodegenError::DegreeBoundViolated {
            theta: validated.theta,
            t: spec.t,
            m: spec.m as usize,
        });
    }
    Ok(labels)
}

fn amplitude(weight: &Rational, mass: &Rational, scale: usize) -> Result<crate::exactnum::RadicalSum, CodegenError> {
    let ratio = weight * Rational::from_integer(scale.into()) / mass;
    Ok(sqrt_of_rational(&ratio)?)
}

/// `|0_L⟩` over positive coefficients, `|1_L⟩` over negative ones, with
/// squared amplitudes `2|f_z| / Σ|f_z|`.
pub fn build_type_a(spec: &CodeSpec) -> Result<PICode, CodegenError> {
    spec.check_shape()?;
    if spec.d != 2 {
        return Err(CodegenError::InvalidSpec(format!("sign-split codes have d = 2, got {}", spec.d)));
    }
    let factor = RationalPolynomial::x_minus_one().pow(spec.m);
    if spec.f.exact_div(&factor).is_none() {
        return Err(CodegenError::NotDivisible {
            factor: format!("(x-1)^{}", spec.m),
        });
    }
    let labels = partition_labels(spec)?;
    let mass = spec
        .f
        .coeffs()
        .iter()
        .fold(Rational::zero(), |acc, c| acc + c.abs());
    let mut zero = Vec::new();
    let mut one = Vec::new();
    for (z, fz) in spec.f.coeffs().iter().enumerate() {
        if fz.is_zero() {
            continue;
        }
        let amp = amplitude(&fz.abs(), &mass, 2)?;
        let slot = if fz.is_positive() { &mut zero } else { &mut one };
        slot.push((labels[z].clone(), amp));
    }
    finish(spec, vec![zero, one])
}

/// `|k_L⟩` over `z ≡ k (mod d)` with squared amplitudes `d·f_z / Σf`.
pub fn build_type_b(spec: &CodeSpec) -> Result<PICode, CodegenError> {
    spec.check_shape()?;
    let factor = repunit(spec.d).pow(spec.m);
    if spec.f.exact_div(&factor).is_none() {
        return Err(CodegenError::NotDivisible {
            factor: format!("(1+…+x^{})^{}", spec.d - 1, spec.m),
        });
    }
    if let Some(z) = spec.f.coeffs().iter().position(Signed::is_negative) {
        return Err(CodegenError::NegativeCoefficient { z });
    }
    let labels = partition_labels(spec)?;
    let mass = spec.f.coeffs().iter().fold(Rational::zero(), |acc, c| acc + c);
    let expected = &mass / Rational::from_integer(spec.d.into());
    let mut classes: Vec<Vec<_>> = vec![Vec::new(); spec.d];
    let mut class_sums = vec![Rational::zero(); spec.d];
    for (z, fz) in spec.f.coeffs().iter().enumerate() {
        class_sums[z % spec.d] += fz;
        if fz.is_zero() {
            continue;
        }
        classes[z % spec.d].push((labels[z].clone(), amplitude(fz, &mass, spec.d)?));
    }
    if let Some((class, sum)) = class_sums.iter().enumerate().find(|(_, s)| **s != expected) {
        return Err(CodegenError::ClassSumMismatch {
            class,
            sum: format_rational(sum),
            expected: format_rational(&expected),
        });
    }
    finish(spec, classes)
}

/// Residue-class code for `f = (1+…+x^{d-1})^m ((1-s) + s·x)`, `s ∈ [0,1]`.
/// The polynomial is rebuilt from `m`, `d` and `s`; `p` is evaluated on
/// `0..=deg f`.
pub fn build_theta_family(
    m: u32,
    d: usize,
    sin2: &Rational,
    p_polys: &[RationalPolynomial],
    q: usize,
    total: usize,
    t: usize,
) -> Result<PICode, CodegenError> {
    if sin2.is_negative() || *sin2 > Rational::one() {
        return Err(CodegenError::ParameterBoundViolated(format!(
            "sin²θ = {} outside [0, 1]",
            format_rational(sin2)
        )));
    }
    if d < 2 {
        return Err(CodegenError::InvalidSpec(format!("d = {d} < 2")));
    }
    let g = RationalPolynomial::new(vec![Rational::one() - sin2, sin2.clone()]);
    let f = &repunit(d).pow(m) * &g;
    let spec = CodeSpec::new(
        q,
        total,
        d,
        t,
        m,
        f,
        p_polys.to_vec(),
        Construction::Theta { sin2: sin2.clone() },
    );
    debug_assert_eq!(
        spec.f.coeffs().iter().fold(Rational::zero(), |a, c| a + c),
        Rational::from_integer(BigInt::from(d).pow(m))
    );
    build_type_b(&spec)
}

/// Binomial code on qubits: `|0_L⟩` over even `j ≤ n`, `|1_L⟩` over odd
/// `j`, labels `(g·j, N - g·j)`, squared amplitudes `C(n, j) / 2^{n-1}`.
pub fn build_gnu(g: usize, n: usize, total: usize, t: usize) -> Result<PICode, CodegenError> {
    if t < 1 {
        return Err(CodegenError::InvalidSpec("t must be positive".into()));
    }
    let need = 2 * t + 1;
    if g < need || n < need {
        return Err(CodegenError::ParameterBoundViolated(format!(
            "g = {g} and n = {n} must both be at least 2t+1 = {need}"
        )));
    }
    if total < g * n {
        return Err(CodegenError::ParameterBoundViolated(format!(
            "N = {total} is below g·n = {}",
            g * n
        )));
    }
    let half_mass = Rational::from_integer(BigInt::from(2).pow(n as u32 - 1));
    let mut logical = vec![Vec::new(), Vec::new()];
    for j in 0..=n {
        let label = WeightVector::new(vec![g * j, total - g * j])?;
        let amp = sqrt_of_rational(&(Rational::from_integer(binomial(n, j)) / &half_mass))?;
        logical[j % 2].push((label, amp));
    }
    let f = RationalPolynomial::from(vec![BigInt::one(); 2]).pow(n as u32);
    let p_polys = PartitionPolynomialTuple::linear_pair(g as i64, total, n).polys;
    let code = PICode {
        q: 2,
        total,
        t,
        construction: Construction::Gnu { g, n }.name().to_string(),
        f,
        p_polys,
        logical: logical
            .into_iter()
            .map(|terms| LogicalVector::new(2, total, terms))
            .collect(),
    };
    code.check_invariants()?;
    Ok(code)
}

fn finish(spec: &CodeSpec, logical: Vec<Vec<(WeightVector, crate::exactnum::RadicalSum)>>) -> Result<PICode, CodegenError> {
    let code = PICode {
        q: spec.q,
        total: spec.total,
        t: spec.t,
        construction: spec.construction.name().to_string(),
        f: spec.f.clone(),
        p_polys: spec.p.polys.clone(),
        logical: logical
            .into_iter()
            .map(|terms| LogicalVector::new(spec.q, spec.total, terms))
            .collect(),
    };
    code.check_invariants()?;
    Ok(code)
}
