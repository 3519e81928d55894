//! Resolution-data schema: the numerical shadow of a log resolution, loaded
//! from and saved to the `bsloci-1` JSON format.
//!
//! The data is input, never computed here: orders of vanishing of each f_j
//! along the divisor components, the relative canonical coefficients k_E,
//! divisor kinds, optional strata, a weight vector, and a finite test set of
//! elements with their divisorial orders. Everything is immutable after load
//! and safe to share across threads.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "bsloci-1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisorKind {
    /// Maps birationally onto a component of the divisor of f; forces k = 0.
    #[serde(rename = "strict-transform")]
    StrictTransform,
    #[serde(rename = "exceptional")]
    Exceptional,
}

/// One irreducible component E of the total transform of the divisor of f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub name: String,
    /// (ord_E(f_1), ..., ord_E(f_r))
    pub orders: Vec<u64>,
    /// Order of vanishing of det Jac along E (coefficient of the relative
    /// canonical divisor).
    pub k: u64,
    pub kind: DivisorKind,
}

/// A ring element h known through its divisorial orders (ord_E(h))_E,
/// indexed like `divisors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestElement {
    pub name: String,
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub a: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    /// Number of polynomials f_1..f_r.
    pub r: usize,
    pub divisors: Vec<Divisor>,
    /// Divisor-index subsets with nonempty common intersection upstairs.
    /// Trusted user input; no geometric check is possible from numbers alone.
    pub strata: Vec<Vec<usize>>,
    /// Interpret as a real log resolution. Purely a label: the combinatorics
    /// downstream is identical, only the reported zero locus differs.
    pub real_mode: bool,
    /// Ambient dimension bound, used to sanity-check stratum sizes.
    pub dim: Option<usize>,
}

/// A full input document: data, weight vector, and the test set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub data: ResolutionData,
    pub weight: WeightVector,
    pub test_elements: Vec<TestElement>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    version: String,
    r: usize,
    #[serde(default)]
    real_mode: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    divisors: Vec<Divisor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strata: Option<Vec<Vec<usize>>>,
    a: Vec<u64>,
    #[serde(default)]
    test_elements: Vec<TestElement>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid json at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema version mismatch: expected {SCHEMA_VERSION}, found {found}")]
    Version { found: String },
    #[error("at least one divisor required")]
    NoDivisors,
    #[error("divisor {name}: orders vector has length {got}, expected r = {expected}")]
    DivisorOrdersLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("test element {name}: orders vector has length {got}, expected {expected} (one per divisor)")]
    ElementOrdersLength {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("weight vector has length {got}, expected r = {expected}")]
    WeightLength { got: usize, expected: usize },
}

pub fn load_str(text: &str) -> Result<Document, LoadError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.version != SCHEMA_VERSION {
        return Err(LoadError::Version { found: raw.version });
    }
    if raw.divisors.is_empty() {
        return Err(LoadError::NoDivisors);
    }
    for d in &raw.divisors {
        if d.orders.len() != raw.r {
            return Err(LoadError::DivisorOrdersLength {
                name: d.name.clone(),
                got: d.orders.len(),
                expected: raw.r,
            });
        }
    }
    if raw.a.len() != raw.r {
        return Err(LoadError::WeightLength {
            got: raw.a.len(),
            expected: raw.r,
        });
    }
    for h in &raw.test_elements {
        if h.orders.len() != raw.divisors.len() {
            return Err(LoadError::ElementOrdersLength {
                name: h.name.clone(),
                got: h.orders.len(),
                expected: raw.divisors.len(),
            });
        }
    }
    Ok(Document {
        data: ResolutionData {
            r: raw.r,
            divisors: raw.divisors,
            strata: raw.strata.unwrap_or_default(),
            real_mode: raw.real_mode,
            dim: raw.dim,
        },
        weight: WeightVector { a: raw.a },
        test_elements: raw.test_elements,
    })
}

pub fn load_path(path: &std::path::Path) -> Result<Document, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_str(&text)
}

/// Canonical serialization; `load_str(save_string(d)) == d`.
pub fn save_string(doc: &Document) -> String {
    let raw = RawDocument {
        version: SCHEMA_VERSION.to_string(),
        r: doc.data.r,
        real_mode: doc.data.real_mode,
        dim: doc.data.dim,
        divisors: doc.data.divisors.clone(),
        strata: if doc.data.strata.is_empty() {
            None
        } else {
            Some(doc.data.strata.clone())
        },
        a: doc.weight.a.clone(),
        test_elements: doc.test_elements.clone(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("schema serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DivisorOrdersLength,
    NotInSupport,
    UnitPolynomial,
    StrictTransformK,
    InvertibleWeightProduct,
    WeightLength,
    StratumIndex,
    StratumSize,
    ElementOrdersLength,
    UnitElementOrders,
}

/// A violated invariant. Violations are data, not exceptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

/// Checks every model invariant; total (never aborts), empty iff valid.
pub fn validate(doc: &Document) -> Vec<Violation> {
    let data = &doc.data;
    let a = &doc.weight.a;
    let mut out = Vec::new();
    let mut push = |kind, subject: &str, message: String| {
        out.push(Violation {
            kind,
            subject: subject.to_string(),
            message,
        });
    };

    for d in &data.divisors {
        if d.orders.len() != data.r {
            push(
                ViolationKind::DivisorOrdersLength,
                &d.name,
                format!(
                    "orders vector has length {}, expected r = {}",
                    d.orders.len(),
                    data.r
                ),
            );
            continue;
        }
        if d.orders.iter().all(|&n| n == 0) {
            push(
                ViolationKind::NotInSupport,
                &d.name,
                "all orders are zero: divisor not in support of the pulled-back divisor of f"
                    .to_string(),
            );
        }
        if d.kind == DivisorKind::StrictTransform && d.k != 0 {
            push(
                ViolationKind::StrictTransformK,
                &d.name,
                format!("strict transform must have k = 0, found k = {}", d.k),
            );
        }
    }

    for j in 0..data.r {
        let column_zero = data
            .divisors
            .iter()
            .filter(|d| d.orders.len() == data.r)
            .all(|d| d.orders[j] == 0);
        if column_zero {
            push(
                ViolationKind::UnitPolynomial,
                &format!("f{}", j + 1),
                "column of the order matrix is zero: f_j is a unit".to_string(),
            );
        }
    }

    if a.len() != data.r {
        push(
            ViolationKind::WeightLength,
            "a",
            format!(
                "weight vector has length {}, expected r = {}",
                a.len(),
                data.r
            ),
        );
    } else {
        let product_vanishes = data.divisors.iter().any(|d| {
            d.orders.len() == data.r
                && d.orders.iter().zip(a).map(|(&n, &w)| n * w).sum::<u64>() > 0
        });
        if !product_vanishes {
            push(
                ViolationKind::InvertibleWeightProduct,
                "a",
                "no divisor has positive weighted order: the weighted product of the f_j is invertible"
                    .to_string(),
            );
        }
    }

    for (si, stratum) in data.strata.iter().enumerate() {
        let label = format!("stratum {si}");
        for &idx in stratum {
            if idx >= data.divisors.len() {
                push(
                    ViolationKind::StratumIndex,
                    &label,
                    format!(
                        "divisor index {idx} out of range ({} divisors)",
                        data.divisors.len()
                    ),
                );
            }
        }
        if let Some(dim) = data.dim {
            if stratum.len() > dim {
                push(
                    ViolationKind::StratumSize,
                    &label,
                    format!(
                        "stratum has {} divisors, exceeding the dimension bound {dim}",
                        stratum.len()
                    ),
                );
            }
        }
    }

    for h in &doc.test_elements {
        if h.orders.len() != data.divisors.len() {
            push(
                ViolationKind::ElementOrdersLength,
                &h.name,
                format!(
                    "orders vector has length {}, expected {} (one per divisor)",
                    h.orders.len(),
                    data.divisors.len()
                ),
            );
            continue;
        }
        if h.name == "1" && h.orders.iter().any(|&n| n != 0) {
            push(
                ViolationKind::UnitElementOrders,
                &h.name,
                "the element named \"1\" must have all-zero orders".to_string(),
            );
        }
    }

    out
}
