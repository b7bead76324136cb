//! Machine-readable record of a verified complexity value.
//!
//! Wire format (schema 1):
//!
//! ```json
//! {
//!   "schema": 1, "n": 1, "m": 2, "k": 3,
//!   "lower_bound": 3, "upper_bound": 3, "tc_exact": 3,
//!   "factors": ["w(1,3) - w'(1,3)", ...],
//!   "witness": { "monomial": "w(1,2)*w(2,3)*w'(1,3)", "coefficient": -2 },
//!   "basis_dims": [1, 5, 8, 4],
//!   "elapsed_ms": 0
//! }
//! ```
//!
//! Classes are written in the expression syntax of [`crate::expr`].

use serde::{Deserialize, Serialize};

use crate::basis::poincare_polynomial;
use crate::bounds::upper_bound_dimension;
use crate::diagonal::diagonal_apply;
use crate::error::{Error, Result};
use crate::expr::eval_str;
use crate::ring::{Element, Monomial};
use crate::space::SpaceSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct TcCertificate {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub lower_bound: u32,
    pub upper_bound: u32,
    /// Present iff the bounds meet.
    pub tc_exact: Option<u32>,
    /// The zero-divisors whose product is nonzero.
    pub factor_list: Vec<Element>,
    pub witness_monomial: Monomial,
    pub witness_coefficient: i64,
    /// Rank of the fibre product ring in each grade.
    pub basis_dims: Vec<u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct WitnessJson {
    monomial: String,
    coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateJson {
    schema: u32,
    n: u32,
    m: u32,
    k: u32,
    lower_bound: u32,
    upper_bound: u32,
    tc_exact: Option<u32>,
    factors: Vec<String>,
    witness: WitnessJson,
    basis_dims: Vec<u64>,
    elapsed_ms: u64,
}

impl TcCertificate {
    pub fn spec(&self) -> Result<SpaceSpec> {
        SpaceSpec::fibre_product(self.n, self.m, self.k)
    }

    /// Recomputes the product of the factors, the upper bound and the ranks,
    /// and compares them with the record.
    pub fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        if self.lower_bound > self.upper_bound {
            return bad(format!("lower bound {} exceeds upper bound {}", self.lower_bound, self.upper_bound));
        }
        if self.witness_coefficient == 0 {
            return bad("witness coefficient is zero".into());
        }
        let grade = self.witness_monomial.grade();
        if grade != self.lower_bound || self.factor_list.len() != self.lower_bound as usize {
            return bad(format!(
                "witness grade {grade}, factor count {} and lower bound {} disagree",
                self.factor_list.len(),
                self.lower_bound
            ));
        }
        let expected_exact = (self.lower_bound == self.upper_bound).then_some(self.lower_bound);
        if self.tc_exact != expected_exact {
            return bad(format!("tc_exact {:?} inconsistent with bounds", self.tc_exact));
        }

        let spec = self.spec()?;
        let upper = upper_bound_dimension(&spec)?.value;
        if self.upper_bound != upper {
            return bad(format!("upper bound {} differs from the recomputed {upper}", self.upper_bound));
        }
        if self.basis_dims != poincare_polynomial(&spec).coefficients() {
            return bad(format!("basis_dims {:?} differ from the Poincare coefficients", self.basis_dims));
        }
        let mut product = Element::one(spec);
        for (index, f) in self.factor_list.iter().enumerate() {
            if *f.spec() != spec {
                return bad(format!("factor #{index} lives in {}, expected {spec}", f.spec()));
            }
            if !diagonal_apply(f)?.is_zero() {
                return Err(Error::NotAZeroDivisor { index });
            }
            product = product.multiply(f)?;
        }
        let c = product.coefficient(&self.witness_monomial);
        if c != self.witness_coefficient {
            return bad(format!(
                "coefficient of {} in the product is {c}, certificate says {}",
                self.witness_monomial, self.witness_coefficient
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let wire = CertificateJson {
            schema: SCHEMA_VERSION,
            n: self.n,
            m: self.m,
            k: self.k,
            lower_bound: self.lower_bound,
            upper_bound: self.upper_bound,
            tc_exact: self.tc_exact,
            factors: self.factor_list.iter().map(Element::to_string).collect(),
            witness: WitnessJson {
                monomial: self.witness_monomial.to_string(),
                coefficient: self.witness_coefficient,
            },
            basis_dims: self.basis_dims.clone(),
            elapsed_ms: self.elapsed_ms,
        };
        serde_json::to_string_pretty(&wire).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<TcCertificate> {
        let wire: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidCertificate(e.to_string()))?;
        if wire.schema != SCHEMA_VERSION {
            return Err(Error::InvalidCertificate(format!("unsupported schema {}", wire.schema)));
        }
        let spec = SpaceSpec::fibre_product(wire.n, wire.m, wire.k)?;
        let factor_list = wire.factors.iter().map(|f| eval_str(f, &spec)).collect::<Result<Vec<_>>>()?;
        let witness = eval_str(&wire.witness.monomial, &spec)?;
        let witness_monomial = match witness.terms().as_slice() {
            [(mono, 1)] => *mono,
            _ => {
                return Err(Error::InvalidCertificate(format!(
                    "witness `{}` is not a single basis monomial",
                    wire.witness.monomial
                )))
            }
        };
        let cert = TcCertificate {
            n: wire.n,
            m: wire.m,
            k: wire.k,
            lower_bound: wire.lower_bound,
            upper_bound: wire.upper_bound,
            tc_exact: wire.tc_exact,
            factor_list,
            witness_monomial,
            witness_coefficient: wire.witness.coefficient,
            basis_dims: wire.basis_dims,
            elapsed_ms: wire.elapsed_ms,
        };
        cert.check()?;
        Ok(cert)
    }
}
