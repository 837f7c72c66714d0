use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldConfig};
use crate::monomial::{MonomialOrder, OrderKind};
use crate::parse::{parse, render};
use crate::poly::{Polynomial, Ring};
use crate::polymat::{ElementaryOp, OpKind, Permutation, PolyMatrix};

/// How `F` was produced from `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trace {
    /// `U = ops[0] * ... * ops[s-1]`, `F = U [G; 0]`.
    Elementary(Vec<ElementaryOp>),
    /// `F = U1 S [U2; O] G`.
    Bruhat { u1: PolyMatrix, s: Permutation, u2: PolyMatrix },
}

impl Trace {
    /// Number of elementary factors; for the Bruhat form, the nonzero
    /// off-diagonal entries of `U1` and `U2` plus one for a non-identity `S`.
    pub fn length(&self) -> u32 {
        match self {
            Trace::Elementary(ops) => ops.len() as u32,
            Trace::Bruhat { u1, s, u2 } => {
                let off = |u: &PolyMatrix| {
                    (0..u.rows())
                        .flat_map(|i| (0..u.cols()).map(move |j| (i, j)))
                        .filter(|&(i, j)| i != j && !u.get(i, j).is_zero())
                        .count()
                };
                (off(u1) + off(u2) + (*s != Permutation::identity(s.len())) as usize) as u32
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordStats {
    pub s: u32,
    /// `None` only when every entry of `F` is zero.
    pub max_deg_f: Option<u32>,
    pub max_coeff_bits: u64,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetRecord {
    pub idx: u64,
    pub seed: u64,
    pub g: Vec<Polynomial>,
    pub f: Vec<Polynomial>,
    pub trace: Trace,
    pub stats: RecordStats,
}

impl DatasetRecord {
    pub fn new(idx: u64, seed: u64, g: Vec<Polynomial>, f: Vec<Polynomial>, trace: Trace) -> Self {
        let stats = RecordStats {
            s: trace.length(),
            max_deg_f: f.iter().filter_map(Polynomial::degree).max(),
            max_coeff_bits: f.iter().map(Polynomial::max_coeff_bits).max().unwrap_or(0),
            verified: false,
        };
        DatasetRecord { idx, seed, g, f, trace, stats }
    }

    pub fn ring(&self) -> Ring {
        self.g[0].ring()
    }

    pub fn to_json(&self, with_tokens: bool) -> RecordJson {
        let ring = self.ring();
        let order = MonomialOrder::lex(ring.nvars);
        let show = |v: &[Polynomial]| v.iter().map(|p| render(p, &order)).collect();
        let trace = match &self.trace {
            Trace::Elementary(ops) => ops.iter().map(TraceEntry::from_op).collect(),
            Trace::Bruhat { u1, s, u2 } => {
                vec![TraceEntry::Bruhat { u1: u1.to_string_grid(), s: s.clone(), u2: u2.to_string_grid() }]
            }
        };
        RecordJson {
            idx: self.idx,
            seed: format!("{:016x}", self.seed),
            nvars: ring.nvars,
            field: ring.field,
            order: OrderKind::Lex,
            g: show(&self.g),
            f: show(&self.f),
            trace,
            stats: self.stats.clone(),
            tokens: with_tokens.then(|| super::tokens::record_tokens(&self.f, &self.g)),
        }
    }

    pub fn to_json_line(&self, with_tokens: bool) -> String {
        serde_json::to_string(&self.to_json(with_tokens)).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        let raw: RecordJson =
            serde_json::from_str(line).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
        raw.to_record()
    }
}

/// One trace step in JSON; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum TraceEntry {
    Permute { i: usize, j: usize },
    Scale { i: usize, c: String },
    AddRow { target: usize, source: usize, f: String },
    Bruhat { u1: Vec<Vec<String>>, s: Permutation, u2: Vec<Vec<String>> },
}

impl TraceEntry {
    fn from_op(op: &ElementaryOp) -> Self {
        match op.kind() {
            OpKind::Permute { i, j } => TraceEntry::Permute { i: *i, j: *j },
            OpKind::Scale { i, c } => TraceEntry::Scale { i: *i, c: c.to_string() },
            OpKind::AddRow { target, source, factor } => TraceEntry::AddRow {
                target: *target,
                source: *source,
                f: render(factor, &MonomialOrder::lex(factor.ring().nvars)),
            },
        }
    }
}

fn parse_coeff(s: &str, field: FieldConfig) -> Result<Coeff> {
    parse(s, Ring::new(0, field))?
        .constant_value()
        .ok_or_else(|| Error::Parse { pos: 0, msg: format!("{s:?} is not a constant") })
}

/// The serialized record: one JSON object per line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordJson {
    pub idx: u64,
    /// Per-record seed as 16 hex digits.
    pub seed: String,
    pub nvars: usize,
    pub field: FieldConfig,
    pub order: OrderKind,
    #[serde(rename = "G")]
    pub g: Vec<String>,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    pub trace: Vec<TraceEntry>,
    pub stats: RecordStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<String>>,
}

impl RecordJson {
    pub fn to_record(&self) -> Result<DatasetRecord> {
        self.field.validate()?;
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let seed = u64::from_str_radix(&self.seed, 16).map_err(|e| bad(format!("seed {:?}: {e}", self.seed)))?;
        if self.g.is_empty() {
            return Err(bad("empty G".into()));
        }
        let ring = Ring::new(self.nvars, self.field);
        let polys = |v: &[String]| v.iter().map(|s| parse(s, ring)).collect::<Result<Vec<_>>>();
        let (g, f) = (polys(&self.g)?, polys(&self.f)?);
        let m = f.len();
        let trace = match self.trace.as_slice() {
            [TraceEntry::Bruhat { u1, s, u2 }] => Trace::Bruhat {
                u1: PolyMatrix::from_string_grid(ring, u1)?,
                s: Permutation::new(s.as_slice().to_vec())?,
                u2: PolyMatrix::from_string_grid(ring, u2)?,
            },
            entries => Trace::Elementary(
                entries
                    .iter()
                    .map(|e| match e {
                        TraceEntry::Permute { i, j } => ElementaryOp::permute(m, *i, *j),
                        TraceEntry::Scale { i, c } => ElementaryOp::scale(m, *i, parse_coeff(c, self.field)?),
                        TraceEntry::AddRow { target, source, f } => {
                            ElementaryOp::add_row(m, *target, *source, parse(f, ring)?)
                        }
                        TraceEntry::Bruhat { .. } => Err(bad("bruhat entry mixed with elementary ops".into())),
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let mut record = DatasetRecord::new(self.idx, seed, g, f, trace);
        record.stats.verified = self.stats.verified;
        Ok(record)
    }
}
