//! JSON documents: matrices as row-major `[re, im]` pairs.

use cnormal::cnormal::{Diagnostics, GsVerdict, ObstructionCertificate, SearchStats, Word};
use cnormal::fixtures::WorkedExample;
use cnormal::{Complex64, ComplexMatrix, ComplexVector, PerturbationSpec64, Tier, Tolerances, VerdictKind};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

pub type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn pairs(v: &[Complex64]) -> Vec<Pair> {
    v.iter().copied().map(pair).collect()
}

fn vector(v: &[Pair]) -> ComplexVector {
    v.iter().copied().map(complex).collect()
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn check_finite(what: &str, v: &[Pair]) -> Result<(), InputError> {
    match v.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
        Some(i) => Err(bad(format!("{what}: non-finite value at index {i}"))),
        None => Ok(()),
    }
}

/// `A = N + λ·y⊗x` data carried alongside a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationData {
    pub n: Vec<Pair>,
    pub x: Vec<Pair>,
    pub y: Vec<Pair>,
    pub lambda: Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub schema_version: String,
    pub dim: usize,
    pub entries: Vec<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationData>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            dim: m.rows(),
            entries: pairs(m.as_slice()),
            name: None,
            source: None,
            perturbation: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>, source: Option<String>) -> Self {
        self.name = Some(name.into());
        self.source = source;
        self
    }

    pub fn with_perturbation(mut self, spec: &PerturbationSpec64) -> Self {
        self.perturbation = Some(PerturbationData {
            n: pairs(spec.n.as_slice()),
            x: pairs(&spec.x),
            y: pairs(&spec.y),
            lambda: pair(spec.lambda),
        });
        self
    }

    pub fn from_example(ex: &WorkedExample<f64>) -> Self {
        let spec = PerturbationSpec64 {
            n: ex.n.clone(),
            x: ex.x.clone(),
            y: ex.y.clone(),
            lambda: ex.lambda,
        };
        Self::from_matrix(&ex.a)
            .named(ex.name, Some(ex.provenance.to_string()))
            .with_perturbation(&spec)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("{0}x{0} matrix", self.dim))
    }

    fn square(&self, what: &str, entries: &[Pair]) -> Result<ComplexMatrix, InputError> {
        if self.dim == 0 {
            return Err(bad("dim must be at least 1"));
        }
        if entries.len() != self.dim * self.dim {
            return Err(bad(format!(
                "{what}: expected {} entries for dim {}, found {}",
                self.dim * self.dim,
                self.dim,
                entries.len()
            )));
        }
        check_finite(what, entries)?;
        ComplexMatrix::from_row_major(self.dim, self.dim, entries.iter().copied().map(complex).collect())
            .map_err(|e| bad(format!("{what}: {e}")))
    }

    pub fn matrix(&self) -> Result<ComplexMatrix, InputError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(bad(format!("unsupported schema_version {:?}", self.schema_version)));
        }
        self.square("entries", &self.entries)
    }

    /// `(N, x, y, λ)` from the embedded perturbation, or `None` if absent.
    pub fn perturbation(&self) -> Result<Option<(ComplexMatrix, ComplexVector, ComplexVector, Complex64)>, InputError> {
        let Some(p) = &self.perturbation else {
            return Ok(None);
        };
        let n = self.square("perturbation.n", &p.n)?;
        for (what, v) in [("perturbation.x", &p.x), ("perturbation.y", &p.y)] {
            if v.len() != self.dim {
                return Err(bad(format!(
                    "{what}: expected {} components, found {}",
                    self.dim,
                    v.len()
                )));
            }
            check_finite(what, v)?;
        }
        check_finite("perturbation.lambda", &[p.lambda])?;
        Ok(Some((n, vector(&p.x), vector(&p.y), complex(p.lambda))))
    }
}

pub fn parse_vector(what: &str, s: &str, dim: usize) -> Result<ComplexVector, InputError> {
    let v: Vec<Pair> = serde_json::from_str(s).map_err(|e| bad(format!("{what}: {e}")))?;
    if v.len() != dim {
        return Err(bad(format!("{what}: expected {dim} components, found {}", v.len())));
    }
    check_finite(what, &v)?;
    Ok(vector(&v))
}

pub fn parse_scalar(what: &str, s: &str) -> Result<Complex64, InputError> {
    let p: Pair = serde_json::from_str(s).map_err(|e| bad(format!("{what}: {e}")))?;
    check_finite(what, &[p])?;
    Ok(complex(p))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum CertificateDocument {
    Modulus {
        eigenvalues: [f64; 2],
        f: [Vec<Pair>; 2],
        g: [Vec<Pair>; 2],
        moduli: [f64; 2],
    },
    PhaseCycle {
        indices: Vec<usize>,
        eigenvalues: Vec<f64>,
        f: Vec<Vec<Pair>>,
        g: Vec<Vec<Pair>>,
        product: Pair,
    },
    WordTrace {
        word: String,
        trace: Pair,
    },
}

impl CertificateDocument {
    pub fn from_certificate(c: &ObstructionCertificate<f64>) -> Self {
        match c {
            ObstructionCertificate::Modulus {
                eigenvalues,
                f,
                g,
                moduli,
            } => CertificateDocument::Modulus {
                eigenvalues: [eigenvalues.0, eigenvalues.1],
                f: [pairs(&f.0), pairs(&f.1)],
                g: [pairs(&g.0), pairs(&g.1)],
                moduli: [moduli.0, moduli.1],
            },
            ObstructionCertificate::PhaseCycle {
                indices,
                eigenvalues,
                f,
                g,
                product,
            } => CertificateDocument::PhaseCycle {
                indices: indices.clone(),
                eigenvalues: eigenvalues.clone(),
                f: f.iter().map(|v| pairs(v)).collect(),
                g: g.iter().map(|v| pairs(v)).collect(),
                product: pair(*product),
            },
            ObstructionCertificate::WordTrace { word, trace } => CertificateDocument::WordTrace {
                word: word.to_string(),
                trace: pair(*trace),
            },
        }
    }

    pub fn to_certificate(&self) -> Result<ObstructionCertificate<f64>, InputError> {
        Ok(match self {
            CertificateDocument::Modulus {
                eigenvalues,
                f,
                g,
                moduli,
            } => ObstructionCertificate::Modulus {
                eigenvalues: (eigenvalues[0], eigenvalues[1]),
                f: (vector(&f[0]), vector(&f[1])),
                g: (vector(&g[0]), vector(&g[1])),
                moduli: (moduli[0], moduli[1]),
            },
            CertificateDocument::PhaseCycle {
                indices,
                eigenvalues,
                f,
                g,
                product,
            } => ObstructionCertificate::PhaseCycle {
                indices: indices.clone(),
                eigenvalues: eigenvalues.clone(),
                f: f.iter().map(|v| vector(v)).collect(),
                g: g.iter().map(|v| vector(v)).collect(),
                product: complex(*product),
            },
            CertificateDocument::WordTrace { word, trace } => ObstructionCertificate::WordTrace {
                word: Word::parse(word).ok_or_else(|| bad(format!("bad word {word:?}")))?,
                trace: complex(*trace),
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDocument {
    pub eig_cluster_rel: f64,
    pub residual_abs: f64,
    pub rank_rel: f64,
}

impl From<&Tolerances> for ToleranceDocument {
    fn from(t: &Tolerances) -> Self {
        Self {
            eig_cluster_rel: t.eig_cluster_rel,
            residual_abs: t.residual_abs,
            rank_rel: t.rank_rel,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchDocument {
    pub intertwiner_dim: usize,
    pub restarts_run: usize,
    pub best_residual: f64,
}

impl From<&SearchStats<f64>> for SearchDocument {
    fn from(s: &SearchStats<f64>) -> Self {
        Self {
            intertwiner_dim: s.intertwiner_dim,
            restarts_run: s.restarts_run,
            best_residual: s.best_residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsDocument {
    pub tier: String,
    pub m_dim: usize,
    pub witness_residual: Option<f64>,
    pub witness_bound: f64,
    pub gap_bound: f64,
    pub words_checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchDocument>,
    pub tolerances: ToleranceDocument,
}

pub fn tier_name(t: Tier) -> &'static str {
    match t {
        Tier::Normal => "normal",
        Tier::SimpleSpectrum => "simple-spectrum",
        Tier::WordTraces => "word-traces",
        Tier::Search => "search",
    }
}

pub fn kind_name(k: VerdictKind) -> &'static str {
    match k {
        VerdictKind::Yes => "yes",
        VerdictKind::No => "no",
        VerdictKind::Unknown => "unknown",
    }
}

impl DiagnosticsDocument {
    fn new(d: &Diagnostics<f64>, tol: &Tolerances) -> Self {
        Self {
            tier: tier_name(d.tier).to_string(),
            m_dim: d.m_dim,
            witness_residual: d.witness_residual,
            witness_bound: d.witness_bound,
            gap_bound: d.gap_bound,
            words_checked: d.words_checked,
            search: d.search.as_ref().map(SearchDocument::from),
            tolerances: tol.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: String,
    /// Symmetric unitary `u` of the witness `C = u·conj`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatrixDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
    pub diagnostics: DiagnosticsDocument,
}

impl VerdictDocument {
    pub fn new(v: &GsVerdict<f64>, name: Option<String>, tol: &Tolerances) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            name,
            kind: kind_name(v.kind).to_string(),
            witness: v.witness.as_ref().map(|c| MatrixDocument::from_matrix(c.matrix())),
            certificate: v.certificate.as_ref().map(CertificateDocument::from_certificate),
            diagnostics: DiagnosticsDocument::new(&v.diagnostics, tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip_is_bit_exact() {
        let m = cnormal::random::matrix::<f64, _>(&mut cnormal::random::rng(3), 4);
        let doc = MatrixDocument::from_matrix(&m);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MatrixDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let m2 = back.matrix().unwrap();
        assert!(m
            .as_slice()
            .iter()
            .zip(m2.as_slice())
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()));
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let mut doc = MatrixDocument::from_matrix(&ComplexMatrix::identity(2));
        doc.entries.pop();
        assert!(doc.matrix().is_err());
        doc.dim = 0;
        assert!(doc.matrix().is_err());
        let mut doc = MatrixDocument::from_matrix(&ComplexMatrix::identity(2));
        doc.schema_version = "9".into();
        assert!(doc.matrix().is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let a = cnormal::fixtures::example2::<f64>().a;
        let v = cnormal::decide_gs(&a, &Tolerances::default()).unwrap();
        let c = v.certificate.unwrap();
        let doc = CertificateDocument::from_certificate(&c);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CertificateDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_certificate().unwrap(), c);
    }
}
