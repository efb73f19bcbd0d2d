//! Flat, lossless serialization of witness certificates: every integer is a
//! decimal string so consumers never lose precision, and each record can be
//! re-verified from its own fields alone.

use crate::seifert::{self, SeifertError};
use crate::witness::{
    identity_value, verify_witness, LensSpace, SurfaceParams, WitnessCertificate, WitnessError,
    WitnessMethod,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// One verified witness, flattened for JSON Lines output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub p: String,
    pub q: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub u: String,
    pub v: String,
    pub epsilon: String,
    pub k: String,
    pub r_k: String,
    pub s_k: String,
    pub method: String,
    pub alexander: BTreeMap<i64, String>,
    pub identity_value: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("field {field} is not an integer: {value:?}")]
    BadNumber { field: &'static str, value: String },
    #[error("unknown method {0:?}")]
    BadMethod(String),
    #[error("parameters fail the identity: value {0}, expected 1")]
    NotAWitness(BigInt),
    #[error("field {field}: recorded {recorded:?}, recomputed {computed:?}")]
    Mismatch {
        field: &'static str,
        recorded: String,
        computed: String,
    },
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

fn parse_field(field: &'static str, value: &str) -> Result<BigInt, RecordError> {
    value.parse().map_err(|_| RecordError::BadNumber {
        field,
        value: value.to_string(),
    })
}

fn alexander_map(
    space: &LensSpace,
    params: &SurfaceParams,
) -> Result<BTreeMap<i64, String>, RecordError> {
    let matrix = seifert::seifert_matrix_lens(space, params);
    let poly = seifert::alexander(&matrix, space.p())?;
    Ok(poly
        .coeffs()
        .iter()
        .map(|(e, c)| (*e, c.to_string()))
        .collect())
}

impl CertificateRecord {
    pub fn from_certificate(cert: &WitnessCertificate) -> Result<Self, RecordError> {
        let alexander = alexander_map(&cert.space, &cert.params)?;
        Ok(Self {
            p: cert.space.p().to_string(),
            q: cert.space.q().to_string(),
            a: cert.params.a.to_string(),
            b: cert.params.b.to_string(),
            c: cert.params.c.to_string(),
            u: cert.params.u.to_string(),
            v: cert.params.v.to_string(),
            epsilon: cert.epsilon.to_string(),
            k: cert.k.to_string(),
            r_k: cert.r_k.to_string(),
            s_k: cert.s_k.to_string(),
            method: cert.method.as_str().to_string(),
            alexander,
            identity_value: cert.identity_value.to_string(),
        })
    }

    /// Rebuilds the certificate from the recorded strings and checks every
    /// field against a fresh computation.
    pub fn reverify(&self) -> Result<(), RecordError> {
        let p = parse_field("p", &self.p)?;
        let q = parse_field("q", &self.q)?;
        let space = LensSpace::new(p, q)?;
        let params = SurfaceParams {
            a: parse_field("a", &self.a)?,
            b: parse_field("b", &self.b)?,
            c: parse_field("c", &self.c)?,
            u: parse_field("u", &self.u)?,
            v: parse_field("v", &self.v)?,
        };
        let cert = verify_witness(&space, &params)
            .ok_or_else(|| RecordError::NotAWitness(identity_value(&space, &params)))?;

        let check = |field: &'static str, recorded: &str, computed: String| {
            if recorded == computed {
                Ok(())
            } else {
                Err(RecordError::Mismatch {
                    field,
                    recorded: recorded.to_string(),
                    computed,
                })
            }
        };
        check("epsilon", &self.epsilon, cert.epsilon.to_string())?;
        check("k", &self.k, cert.k.to_string())?;
        check("r_k", &self.r_k, cert.r_k.to_string())?;
        check("s_k", &self.s_k, cert.s_k.to_string())?;
        check("identity_value", &self.identity_value, "1".to_string())?;
        if WitnessMethod::from_name(&self.method).is_none() {
            return Err(RecordError::BadMethod(self.method.clone()));
        }
        let alexander = alexander_map(&space, &params)?;
        if self.alexander != alexander {
            return Err(RecordError::Mismatch {
                field: "alexander",
                recorded: format!("{:?}", self.alexander),
                computed: format!("{alexander:?}"),
            });
        }
        Ok(())
    }
}
