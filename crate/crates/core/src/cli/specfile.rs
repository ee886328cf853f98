use serde::{Deserialize, Serialize};

use super::CliError;
use crate::codegen::{build, build_gnu, build_theta_family, CodeSpec, Construction, PICode};
use crate::exactnum::{format_rational, parse_rational, rational, Rational};
use crate::polyid::{make_type_b_f, RationalPolynomial};

/// A rational written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            Coeff::Int(n) => Ok(rational(*n, 1)),
            Coeff::Text(s) => parse_rational(s).map_err(|e| CliError::Parse(e.to_string())),
        }
    }
}

impl From<&Rational> for Coeff {
    fn from(r: &Rational) -> Self {
        Coeff::Text(format_rational(r))
    }
}

pub fn polynomial(coeffs: &[Coeff]) -> Result<RationalPolynomial, CliError> {
    Ok(RationalPolynomial::new(
        coeffs.iter().map(Coeff::to_rational).collect::<Result<_, _>>()?,
    ))
}

pub fn coeffs_of(p: &RationalPolynomial) -> Vec<Coeff> {
    let c: Vec<Coeff> = p.coeffs().iter().map(Coeff::from).collect();
    if c.is_empty() {
        vec![Coeff::Text("0/1".into())]
    } else {
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionBlock {
    TypeA { m: u32 },
    TypeB { m: u32 },
    Theta { m: u32, sin2: Coeff },
    Gnu { g: usize, n: usize },
}

/// Input to `picode build`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub construction: ConstructionBlock,
    pub q: usize,
    #[serde(rename = "N")]
    pub total: usize,
    pub d: usize,
    pub t: usize,
    /// Required for `type_a` and `type_b`; derived for the others.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_coeffs: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub p_polys: Vec<Vec<Coeff>>,
    /// Weight parameter for certification when it differs from `t`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_check: Option<usize>,
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("spec file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("spec serializes");
        s.push('\n');
        s
    }

    pub fn certification_t(&self) -> usize {
        self.t_check.unwrap_or(self.t)
    }

    fn p_polys(&self) -> Result<Vec<RationalPolynomial>, CliError> {
        self.p_polys.iter().map(|p| polynomial(p)).collect()
    }

    fn f(&self) -> Result<RationalPolynomial, CliError> {
        match &self.f_coeffs {
            Some(c) => polynomial(c),
            None => Err(CliError::Parse("spec file: f_coeffs is required for this construction".into())),
        }
    }

    pub fn build(&self) -> Result<PICode, CliError> {
        let code = match &self.construction {
            ConstructionBlock::TypeA { m } => build(&CodeSpec::new(
                self.q,
                self.total,
                self.d,
                self.t,
                *m,
                self.f()?,
                self.p_polys()?,
                Construction::TypeA,
            ))?,
            ConstructionBlock::TypeB { m } => build(&CodeSpec::new(
                self.q,
                self.total,
                self.d,
                self.t,
                *m,
                self.f()?,
                self.p_polys()?,
                Construction::TypeB,
            ))?,
            ConstructionBlock::Theta { m, sin2 } => {
                let sin2 = sin2.to_rational()?;
                if let Some(given) = &self.f_coeffs {
                    let g = RationalPolynomial::new(vec![Rational::from_integer(1.into()) - &sin2, sin2.clone()]);
                    if polynomial(given)? != make_type_b_f(&g, *m, self.d).0 {
                        return Err(CliError::Construction(crate::codegen::CodegenError::InvalidSpec(
                            "f_coeffs disagrees with the family polynomial for this sin2".into(),
                        )));
                    }
                }
                build_theta_family(*m, self.d, &sin2, &self.p_polys()?, self.q, self.total, self.t)?
            }
            ConstructionBlock::Gnu { g, n } => {
                if self.q != 2 || self.d != 2 {
                    return Err(CliError::Construction(crate::codegen::CodegenError::InvalidSpec(format!(
                        "binomial codes have q = d = 2, spec has q = {}, d = {}",
                        self.q, self.d
                    ))));
                }
                build_gnu(*g, *n, self.total, self.t)?
            }
        };
        if code.d() != self.d {
            return Err(CliError::Construction(crate::codegen::CodegenError::InvalidSpec(format!(
                "construction yields d = {}, spec declares {}",
                code.d(),
                self.d
            ))));
        }
        Ok(code)
    }
}
