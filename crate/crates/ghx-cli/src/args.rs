//! Shared argument groups and their translation into engine types.

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use ghx_core::{OpKind, SliceSpec, TableKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ordinary,
    Merkulov,
    Hairy,
    #[value(alias = "chairy")]
    ColoredHairy,
    Forested,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Which complex: family, parities and hair count.
#[derive(Args, Clone, Debug)]
pub struct ComplexArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Parity of n.
    #[arg(long, alias = "n-parity", value_enum, conflicts_with = "n")]
    pub parity: Option<Parity>,
    /// The dimension n itself; only its parity matters.
    #[arg(long)]
    pub n: Option<i64>,
    /// Parity of the hair degree m (hairy family).
    #[arg(long, value_enum)]
    pub m_parity: Option<Parity>,
    #[arg(long, default_value_t = 0)]
    pub hairs: usize,
}

impl ComplexArgs {
    pub fn n_odd(&self) -> Result<bool> {
        match (self.parity, self.n) {
            (Some(p), _) => Ok(p.is_odd()),
            (None, Some(n)) => Ok(n.rem_euclid(2) == 1),
            (None, None) => bail!("give --parity or --n"),
        }
    }

    fn m_odd(&self) -> Result<bool> {
        match self.m_parity {
            Some(p) => Ok(p.is_odd()),
            None => bail!("the hairy family needs --m-parity"),
        }
    }

    fn family(&self) -> Result<FamilyArg> {
        self.family.ok_or_else(|| anyhow::anyhow!("give --family"))
    }

    /// Every complex selected, reading a missing parity as both parities.
    pub fn table_kinds(&self) -> Result<Vec<TableKind>> {
        let family = self.family()?;
        let n_parities = match (self.parity, self.n) {
            (None, None) => vec![Parity::Odd, Parity::Even],
            _ => vec![if self.n_odd()? { Parity::Odd } else { Parity::Even }],
        };
        let m_parities = match (family, self.m_parity) {
            (FamilyArg::Hairy, None) => vec![Some(Parity::Odd), Some(Parity::Even)],
            (_, m) => vec![m],
        };
        let mut out = Vec::new();
        for &n in &n_parities {
            for &m in &m_parities {
                let one = ComplexArgs { parity: Some(n), n: None, m_parity: m, ..self.clone() };
                out.push(one.table_kind()?);
            }
        }
        Ok(out)
    }

    /// Whether `kind` fits every option that was given; unset options
    /// (parities, a zero hair count) match anything.
    pub fn selects(&self, kind: TableKind) -> bool {
        let (family, n_odd, m_odd) = match kind {
            TableKind::Ordinary { n_odd } => (FamilyArg::Ordinary, n_odd, None),
            TableKind::Merkulov { n_odd } => (FamilyArg::Merkulov, n_odd, None),
            TableKind::Hairy { n_odd, m_odd, .. } => (FamilyArg::Hairy, n_odd, Some(m_odd)),
            TableKind::ColoredHairy { n_odd, .. } => (FamilyArg::ColoredHairy, n_odd, None),
            TableKind::Forested { n_odd, .. } => (FamilyArg::Forested, n_odd, None),
        };
        self.family.is_none_or(|f| f == family)
            && self.n_odd().map_or(true, |n| n == n_odd)
            && self.m_parity.zip(m_odd).is_none_or(|(p, m)| p.is_odd() == m)
            && (self.hairs == 0 || self.hairs == kind.hairs())
    }

    pub fn table_kind(&self) -> Result<TableKind> {
        let n_odd = self.n_odd()?;
        let hairs = self.hairs;
        let needs_hairs = |k: TableKind| {
            if hairs == 0 {
                bail!("this family needs --hairs >= 1")
            }
            Ok(k)
        };
        match self.family()? {
            FamilyArg::Ordinary => Ok(TableKind::Ordinary { n_odd }),
            FamilyArg::Merkulov => Ok(TableKind::Merkulov { n_odd }),
            FamilyArg::Hairy => needs_hairs(TableKind::Hairy { n_odd, m_odd: self.m_odd()?, hairs }),
            FamilyArg::ColoredHairy => needs_hairs(TableKind::ColoredHairy { n_odd, hairs }),
            FamilyArg::Forested => Ok(TableKind::Forested { n_odd, hairs }),
        }
    }
}

/// One slice of a complex.
#[derive(Args, Clone, Debug)]
pub struct SliceArgs {
    #[command(flatten)]
    pub complex: ComplexArgs,
    #[arg(long)]
    pub loops: usize,
    /// Internal vertices (marked edges for the forested family).
    #[arg(long, alias = "marked")]
    pub vertices: usize,
    /// Excess of a forested slice.
    #[arg(long, default_value_t = 0)]
    pub excess: usize,
    /// Use the slice with one 5- or 6-valent vertex (merkulov family).
    #[arg(long)]
    pub high: bool,
    /// Keep graphs with bridges (forested family).
    #[arg(long)]
    pub with_bridges: bool,
}

impl SliceArgs {
    pub fn spec(&self) -> Result<SliceSpec> {
        let c = &self.complex;
        let n_odd = c.n_odd()?;
        let (g, v) = (self.loops, self.vertices);
        Ok(match c.table_kind()? {
            TableKind::Ordinary { .. } => SliceSpec::ordinary(n_odd, g, v),
            TableKind::Merkulov { .. } if self.high => SliceSpec::merkulov56(n_odd, g, v),
            TableKind::Merkulov { .. } => SliceSpec::merkulov34(n_odd, g, v),
            TableKind::Hairy { m_odd, hairs, .. } => SliceSpec::hairy(n_odd, m_odd, g, v, hairs),
            TableKind::ColoredHairy { hairs, .. } => SliceSpec::colored_hairy(n_odd, g, v, hairs),
            TableKind::Forested { hairs, .. } => {
                let s = SliceSpec::forested(n_odd, g, v, hairs, self.excess);
                if self.with_bridges {
                    s.with_bridges()
                } else {
                    s
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    /// Edge contraction.
    Contract,
    /// Contraction into the slice with one 5- or 6-valent vertex.
    ContractHigh,
    /// Contraction of a marked edge.
    ContractMarked,
    /// Unmarking of a marked edge.
    Unmark,
    /// Deleting the hair of a one-hair graph.
    HairRemoval,
}

impl From<OpArg> for OpKind {
    fn from(o: OpArg) -> OpKind {
        match o {
            OpArg::Contract => OpKind::Contract,
            OpArg::ContractHigh => OpKind::ContractToHigh,
            OpArg::ContractMarked => OpKind::ContractMarked,
            OpArg::Unmark => OpKind::Unmark,
            OpArg::HairRemoval => OpKind::HairRemoval,
        }
    }
}

/// A range of loop orders.
#[derive(Args, Clone, Debug)]
pub struct LoopRange {
    #[arg(long, default_value_t = 0)]
    pub min_loops: usize,
    #[arg(long)]
    pub max_loops: Option<usize>,
}

impl LoopRange {
    pub fn range(&self) -> Result<std::ops::RangeInclusive<usize>> {
        let Some(max) = self.max_loops else { bail!("give --max-loops") };
        if self.min_loops > max {
            bail!("--min-loops exceeds --max-loops");
        }
        Ok(self.min_loops..=max)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}
