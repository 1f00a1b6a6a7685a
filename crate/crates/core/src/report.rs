use serde::{Deserialize, Serialize};

use crate::log_base::LogBase;

/// Which bound produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Fano,
    Shannon,
    VonNeumann,
    WinterGeneral,
    WinterNumberOp,
    WinterAlpha,
    ClassicalRenyiTsallis,
    ContinuousTsallis,
    ContinuousRenyi,
    ClassicalTsallisAlphaGt1,
    ClassicalRenyiAlphaGt1,
    ApproxTrace,
    QuantumRenyiTsallis,
    TsallisLipschitz,
    RenyiAlphaGt1,
    MomentF1,
    MomentFAlpha,
}

impl BoundKind {
    /// Bounds on differences of log-based entropies (Shannon, von Neumann,
    /// Rényi), whose values convert between bases by a constant factor.
    /// Tsallis entropies carry no logarithm, so any kind covering them is
    /// excluded.
    pub fn is_log_homogeneous(self) -> bool {
        matches!(
            self,
            BoundKind::Fano
                | BoundKind::Shannon
                | BoundKind::VonNeumann
                | BoundKind::WinterGeneral
                | BoundKind::WinterNumberOp
                | BoundKind::WinterAlpha
                | BoundKind::ContinuousRenyi
                | BoundKind::ClassicalRenyiAlphaGt1
                | BoundKind::RenyiAlphaGt1
        )
    }
}

/// How the named terms combine into the reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combination {
    Sum,
    Product,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub value: f64,
}

/// A bound value together with its validity flag and itemised terms.
///
/// `in_validity_domain == false` never suppresses the value; it only marks
/// that tightness or monotonicity guarantees do not apply to the inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub in_validity_domain: bool,
    pub combination: Combination,
    pub terms: Vec<Term>,
    /// Echo of the inputs (ε, E, α, β, c, truncation...).
    pub params: Vec<(String, f64)>,
    /// Derived quantities that are not summands of `value`.
    pub diagnostics: Vec<(String, f64)>,
    pub notes: Vec<String>,
    pub log_base: LogBase,
}

impl BoundReport {
    pub(crate) fn new(kind: BoundKind, combination: Combination) -> Self {
        BoundReport {
            kind,
            value: match combination {
                Combination::Sum => 0.0,
                Combination::Product => 1.0,
            },
            in_validity_domain: true,
            combination,
            terms: Vec::new(),
            params: Vec::new(),
            diagnostics: Vec::new(),
            notes: Vec::new(),
            log_base: LogBase::Natural,
        }
    }

    pub(crate) fn term(mut self, name: &str, value: f64) -> Self {
        self.terms.push(Term {
            name: name.to_string(),
            value,
        });
        self.value = self.recombine();
        self
    }

    pub(crate) fn param(mut self, name: &str, value: f64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub(crate) fn diagnostic(mut self, name: &str, value: f64) -> Self {
        self.diagnostics.push((name.to_string(), value));
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub(crate) fn domain(mut self, ok: bool) -> Self {
        self.in_validity_domain = ok;
        self
    }

    pub fn recombine(&self) -> f64 {
        match self.combination {
            Combination::Sum => self.terms.iter().map(|t| t.value).sum(),
            Combination::Product => self.terms.iter().map(|t| t.value).product(),
        }
    }

    pub fn term_value(&self, name: &str) -> Option<f64> {
        self.terms.iter().find(|t| t.name == name).map(|t| t.value)
    }

    pub fn param_value(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn diagnostic_value(&self, name: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    /// Re-expresses a log-homogeneous report in another base; other kinds
    /// are returned unchanged with a note.
    pub fn in_base(mut self, base: LogBase) -> Self {
        if base == self.log_base {
            return self;
        }
        if !self.kind.is_log_homogeneous() {
            self.notes
                .push(format!("value not rescaled to log base {base}: bound is not log-homogeneous"));
            return self;
        }
        let k = base.factor() / self.log_base.factor();
        match self.combination {
            Combination::Sum => self.terms.iter_mut().for_each(|t| t.value *= k),
            Combination::Product => {
                if let Some(t) = self.terms.first_mut() {
                    t.value *= k;
                }
            }
        }
        self.value = self.recombine();
        self.log_base = base;
        self
    }
}
