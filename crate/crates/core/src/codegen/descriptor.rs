use serde::{Deserialize, Serialize};

use super::{CodegenError, LogicalVector, PICode};
use crate::combinatorics::WeightVector;
use crate::exactnum::{RadicalSum, RadicalTerm};
use crate::polyid::RationalPolynomial;

/// One Dicke term of a logical vector in the JSON descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpTerm {
    pub weights: Vec<usize>,
    pub amp: Vec<RadicalTerm>,
}

/// The canonical on-disk form of a built code. Field order is part of the
/// format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: usize,
    #[serde(rename = "N")]
    pub total: usize,
    pub d: usize,
    pub t: usize,
    pub construction: String,
    pub f_coeffs: Vec<String>,
    pub p_polys: Vec<Vec<String>>,
    pub logical: Vec<Vec<AmpTerm>>,
}

impl PICode {
    pub fn to_descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            q: self.q,
            total: self.total,
            d: self.d(),
            t: self.t,
            construction: self.construction.clone(),
            f_coeffs: self.f.to_strings(),
            p_polys: self.p_polys.iter().map(RationalPolynomial::to_strings).collect(),
            logical: self
                .logical
                .iter()
                .map(|v| {
                    v.terms
                        .iter()
                        .map(|(w, a)| AmpTerm {
                            weights: w.parts().to_vec(),
                            amp: a.to_json_terms(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_descriptor()).expect("descriptor serializes");
        s.push('\n');
        s
    }

    /// Loads a descriptor without enforcing the code invariants, so damaged
    /// codes can still be certified (and fail). Call
    /// [`PICode::check_invariants`] to validate.
    pub fn from_descriptor(desc: &CodeDescriptor) -> Result<PICode, CodegenError> {
        let f = RationalPolynomial::from_strings(&desc.f_coeffs)?;
        let p_polys = desc
            .p_polys
            .iter()
            .map(|p| RationalPolynomial::from_strings(p))
            .collect::<Result<Vec<_>, _>>()?;
        let mut logical = Vec::with_capacity(desc.logical.len());
        for terms in &desc.logical {
            let mut parsed = Vec::with_capacity(terms.len());
            for term in terms {
                let w = WeightVector::new(term.weights.clone())?;
                if w.q() != desc.q || w.total() != desc.total {
                    return Err(CodegenError::DimensionMismatch(format!(
                        "label {w} does not match q = {}, N = {}",
                        desc.q, desc.total
                    )));
                }
                parsed.push((w, RadicalSum::from_json_terms(&term.amp)?));
            }
            logical.push(LogicalVector::new(desc.q, desc.total, parsed));
        }
        if logical.len() != desc.d {
            return Err(CodegenError::DimensionMismatch(format!(
                "d = {} but {} logical vectors",
                desc.d,
                logical.len()
            )));
        }
        Ok(PICode {
            q: desc.q,
            total: desc.total,
            t: desc.t,
            construction: desc.construction.clone(),
            f,
            p_polys,
            logical,
        })
    }

    pub fn from_json(s: &str) -> Result<PICode, DescriptorError> {
        let desc: CodeDescriptor = serde_json::from_str(s).map_err(DescriptorError::Json)?;
        PICode::from_descriptor(&desc).map_err(DescriptorError::Code)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DescriptorError {
    #[error("malformed descriptor: {0}")]
    Json(serde_json::Error),
    #[error("invalid descriptor: {0}")]
    Code(CodegenError),
}
