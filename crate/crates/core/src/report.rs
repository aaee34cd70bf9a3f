//! Outcomes of reciprocity verifiers and their serializable form.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::FieldDescriptor;
use crate::function_field::Place;
use crate::group::GroupValue;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymbolKind {
    Tame,
    Weil,
    SumOfValuations,
    Residue,
    ResidueTheorem,
    Hilbert,
    Nu,
    Horozov,
    Parshin,
    HorozovKerr,
    SegalWilson,
    XSymbol,
    Index,
}

impl SymbolKind {
    pub fn name(self) -> &'static str {
        match self {
            SymbolKind::Tame => "tame",
            SymbolKind::Weil => "weil",
            SymbolKind::SumOfValuations => "sumval",
            SymbolKind::Residue => "residue",
            SymbolKind::ResidueTheorem => "restheorem",
            SymbolKind::Hilbert => "hilbert",
            SymbolKind::Nu => "nu",
            SymbolKind::Horozov => "horozov",
            SymbolKind::Parshin => "parshin",
            SymbolKind::HorozovKerr => "hk4",
            SymbolKind::SegalWilson => "sw",
            SymbolKind::XSymbol => "xsymbol",
            SymbolKind::Index => "index",
        }
    }
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Contribution {
    pub place: Place,
    pub value: GroupValue,
    /// Independently computed value, when an oracle was run.
    pub oracle: Option<GroupValue>,
}

/// A local-to-global identity evaluated over a finite set of places.
///
/// `contributions` lists only the non-identity local values, sorted by place;
/// `aggregate` is their group combination and `ok` holds iff it is the
/// identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verification {
    pub kind: SymbolKind,
    pub field: FieldDescriptor,
    pub contributions: Vec<Contribution>,
    pub aggregate: GroupValue,
    pub ok: bool,
    pub suppressed_trivial: usize,
}

impl Verification {
    pub fn from_values(
        kind: SymbolKind,
        field: FieldDescriptor,
        values: Vec<(Place, GroupValue)>,
        identity: GroupValue,
    ) -> Self {
        Self::from_contributions(
            kind,
            field,
            values
                .into_iter()
                .map(|(place, value)| Contribution { place, value, oracle: None })
                .collect(),
            identity,
        )
    }

    pub fn from_contributions(
        kind: SymbolKind,
        field: FieldDescriptor,
        mut all: Vec<Contribution>,
        identity: GroupValue,
    ) -> Self {
        all.sort_by(|a, b| a.place.cmp(&b.place));
        let aggregate = GroupValue::combine_all(all.iter().map(|c| &c.value), identity);
        let total = all.len();
        let contributions: Vec<Contribution> = all.into_iter().filter(|c| !c.value.is_identity()).collect();
        let suppressed_trivial = total - contributions.len();
        let ok = aggregate.is_identity();
        Verification { kind, field, contributions, aggregate, ok, suppressed_trivial }
    }

    pub fn to_report(&self, inputs: BTreeMap<String, String>, seed: u64) -> VerificationReport {
        VerificationReport {
            kind: self.kind.name().to_string(),
            field: self.field.to_string(),
            inputs,
            contributions: self
                .contributions
                .iter()
                .map(|c| ContributionReport {
                    place: c.place.to_string(),
                    value: c.value.to_string(),
                    oracle: c.oracle.as_ref().map(|o| o.to_string()),
                })
                .collect(),
            aggregate: self.aggregate.to_string(),
            ok: self.ok,
            suppressed_trivial: self.suppressed_trivial,
            seed,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ContributionReport {
    pub place: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

/// Serializable verification outcome; every mathematical value is rendered
/// as a string in the CLI literal grammar.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub field: String,
    pub inputs: BTreeMap<String, String>,
    pub contributions: Vec<ContributionReport>,
    pub aggregate: String,
    pub ok: bool,
    pub suppressed_trivial: usize,
    pub seed: u64,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}", self.kind, self.field)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k} = {v}")?;
        }
        for c in &self.contributions {
            match &c.oracle {
                Some(o) => writeln!(f, "  at {}: {} (oracle {})", c.place, c.value, o)?,
                None => writeln!(f, "  at {}: {}", c.place, c.value)?,
            }
        }
        if self.suppressed_trivial > 0 {
            writeln!(f, "  ({} trivial contributions omitted)", self.suppressed_trivial)?;
        }
        writeln!(f, "  aggregate: {}", self.aggregate)?;
        write!(f, "  {}", if self.ok { "OK" } else { "FAILED" })
    }
}

/// A single local value, such as one tame symbol or one residue.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValueReport {
    pub kind: String,
    pub field: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    pub seed: u64,
}

impl fmt::Display for ValueReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}", self.kind, self.field)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k} = {v}")?;
        }
        match &self.place {
            Some(p) => write!(f, "  value at {p}: {}", self.value)?,
            None => write!(f, "  value: {}", self.value)?,
        }
        if let Some(o) = &self.oracle {
            write!(f, " (oracle {o})")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermReport {
    pub label: String,
    pub value: String,
}

/// Two sides of an identity together with the values they are built from.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub kind: String,
    pub field: String,
    pub inputs: BTreeMap<String, String>,
    pub terms: Vec<TermReport>,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
    pub seed: u64,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}", self.kind, self.field)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k} = {v}")?;
        }
        for t in &self.terms {
            writeln!(f, "  {}: {}", t.label, t.value)?;
        }
        writeln!(f, "  lhs: {}", self.lhs)?;
        writeln!(f, "  rhs: {}", self.rhs)?;
        write!(f, "  {}", if self.ok { "OK" } else { "FAILED" })
    }
}
