//! JSON documents written by the CLI. Every algebraic value is a string in
//! the expression grammar, so documents re-parse into the same objects.

use serde::{Deserialize, Serialize};

use crate::algebra::OperatorKind;
use crate::relations::{Certificate, CertificateTerm, TheoremReport};

use super::expr::{eval_k, eval_localized, parse_expr, Pos};
use super::{CliError, Problem};

/// Pretty-printed with a trailing newline.
pub fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub constants: String,
    pub dimension: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub invariant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub system: SystemJson,
    pub operator: OperatorKind,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(rename = "N0")]
    pub n0: u64,
    pub f: String,
    pub k_indices: Vec<usize>,
    pub terms: Vec<TermJson>,
    pub seed: u64,
}

impl CertificateJson {
    pub fn new(cert: &Certificate, p: &Problem) -> Self {
        CertificateJson {
            system: SystemJson {
                constants: p.minpoly_string(),
                dimension: p.system.n(),
                matrix: p
                    .system
                    .matrix()
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            },
            operator: p.system.kind(),
            q: cert.q.to_string(),
            n0: cert.n0,
            f: cert.f.to_string(),
            k_indices: cert.k_indices.clone(),
            terms: cert
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff: t.coeff.to_string(),
                    invariant: t.invariant.to_string(),
                })
                .collect(),
            seed: cert.seed,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("certificate JSON: {e}")))
    }

    /// Rebuilds the certificate against the problem it was issued for; the
    /// left translates are not stored and come back empty.
    pub fn to_certificate(&self, p: &Problem) -> Result<Certificate, CliError> {
        if self.system.dimension != p.system.n() || self.operator != p.system.kind() {
            return Err(CliError::Input("certificate was issued for a different system".into()));
        }
        let origin = Pos { line: 1, col: 1 };
        let loc = |s: &str| eval_localized(&parse_expr(s, origin)?, p.space(), &p.field);
        Ok(Certificate {
            q: loc(&self.q)?,
            n0: self.n0,
            f: eval_k(&parse_expr(&self.f, origin)?, &p.field)?,
            k_indices: self.k_indices.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| {
                    Ok(CertificateTerm {
                        coeff: loc(&t.coeff)?,
                        invariant: loc(&t.invariant)?,
                    })
                })
                .collect::<Result<_, CliError>>()?,
            seed: self.seed,
            gs: Vec::new(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub proper: bool,
    pub v_stable: bool,
    pub g_stable: bool,
    pub determinant_group_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub relation: String,
    pub in_i: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub generator: String,
    pub in_radical: bool,
    pub in_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub relations: Vec<RelationJson>,
    pub generators: Vec<GeneratorJson>,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub witness: Option<String>,
}

impl VerifyJson {
    pub fn new(r: &TheoremReport) -> Self {
        VerifyJson {
            relations: r
                .relations
                .iter()
                .zip(&r.relations_in_i)
                .map(|(p, &in_i)| RelationJson {
                    relation: p.to_string(),
                    in_i,
                })
                .collect(),
            generators: r
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    generator: g.generator.to_string(),
                    in_radical: g.in_radical,
                    in_ideal: g.in_ideal,
                })
                .collect(),
            a: r.verdict_a(),
            b: r.verdict_b(),
            c: r.verdict_c(),
            witness: r.exact_generation_witness().map(ToString::to_string),
        }
    }
}
