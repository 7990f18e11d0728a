//! Slice parameters: one finite-dimensional graded piece of one complex.

use std::fmt;

use crate::graph::{OrientationConvention, OrientationKind, Species};

/// The complex families the engine knows how to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Connected 1-vertex irreducible simple graphs, valence at least 3.
    Ordinary,
    /// Ordinary graphs whose vertices all have valence 3 or 4.
    Merkulov34,
    /// Ordinary graphs with exactly one vertex of valence 5 or 6, all other
    /// vertices of valence 3 or 4.
    Merkulov56,
    /// Hairy graphs with indistinguishable hairs.
    Hairy,
    /// Hairy graphs with hairs numbered `1..=r`.
    ColoredHairy,
    /// Forested graphs with numbered hairs, graded by marked edges and
    /// excess.
    Forested,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ordinary => "ordinary",
            Family::Merkulov34 => "merkulov34",
            Family::Merkulov56 => "merkulov56",
            Family::Hairy => "hairy",
            Family::ColoredHairy => "chairy",
            Family::Forested => "forested",
        }
    }

    pub fn species(self) -> Species {
        match self {
            Family::Ordinary | Family::Merkulov34 | Family::Merkulov56 => Species::Plain,
            Family::Hairy | Family::ColoredHairy => Species::Hairy,
            Family::Forested => Species::Forested,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a slice. Fields that do not apply to a family are zero.
///
/// For forested slices `vertices` is derived: a slice of loop order `g`,
/// `r` hairs and excess `e` has `2g - 2 + r - e` internal vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SliceSpec {
    pub family: Family,
    pub n_odd: bool,
    /// Hair parity; only meaningful for [`Family::Hairy`].
    pub m_odd: bool,
    pub loops: usize,
    /// Internal vertex count.
    pub vertices: usize,
    pub hairs: usize,
    /// Marked-edge count (forested only).
    pub marked: usize,
    /// Excess (forested only).
    pub excess: usize,
    /// Restrict to bridgeless graphs (forested only).
    pub bridgeless: bool,
}

impl SliceSpec {
    fn base(family: Family, n_odd: bool, loops: usize, vertices: usize) -> Self {
        SliceSpec { family, n_odd, m_odd: false, loops, vertices, hairs: 0, marked: 0, excess: 0, bridgeless: false }
    }

    pub fn ordinary(n_odd: bool, loops: usize, vertices: usize) -> Self {
        Self::base(Family::Ordinary, n_odd, loops, vertices)
    }

    pub fn merkulov34(n_odd: bool, loops: usize, vertices: usize) -> Self {
        Self::base(Family::Merkulov34, n_odd, loops, vertices)
    }

    pub fn merkulov56(n_odd: bool, loops: usize, vertices: usize) -> Self {
        Self::base(Family::Merkulov56, n_odd, loops, vertices)
    }

    pub fn hairy(n_odd: bool, m_odd: bool, loops: usize, vertices: usize, hairs: usize) -> Self {
        SliceSpec { m_odd, hairs, ..Self::base(Family::Hairy, n_odd, loops, vertices) }
    }

    pub fn colored_hairy(n_odd: bool, loops: usize, vertices: usize, hairs: usize) -> Self {
        SliceSpec { hairs, ..Self::base(Family::ColoredHairy, n_odd, loops, vertices) }
    }

    /// Bridgeless forested slice. Slices whose vertex count would be
    /// negative are represented with `vertices = 0` and are empty.
    pub fn forested(n_odd: bool, loops: usize, marked: usize, hairs: usize, excess: usize) -> Self {
        let v = (2 * loops + hairs).saturating_sub(2 + excess);
        SliceSpec { hairs, marked, excess, bridgeless: true, ..Self::base(Family::Forested, n_odd, loops, v) }
    }

    /// The same forested slice without the bridgeless restriction.
    pub fn with_bridges(mut self) -> Self {
        self.bridgeless = false;
        self
    }

    /// Internal edge count: `e = v + g - 1` (hair edges not counted;
    /// forested counts every internal strand, marked or not).
    pub fn internal_edges(&self) -> Option<usize> {
        (self.vertices + self.loops).checked_sub(1)
    }

    /// Whether the parameters are structurally possible at all; a `false`
    /// here means the slice is empty without enumeration.
    pub fn feasible(&self) -> bool {
        let Some(e) = self.internal_edges() else { return false };
        match self.family {
            Family::Forested => {
                let v = self.vertices;
                v >= 1 && 2 * self.loops + self.hairs >= 2 + self.excess && (self.marked < v || v == 0)
            }
            Family::Hairy => self.vertices >= 1 && self.hairs >= 1 && 3 * self.vertices <= 2 * e + self.hairs,
            Family::ColoredHairy => self.vertices >= 1 && self.hairs >= 1 && 3 * self.vertices <= 2 * e + self.hairs,
            _ => self.vertices >= 1 && 3 * self.vertices <= 2 * e,
        }
    }

    pub fn convention(&self) -> OrientationConvention {
        let species = self.family.species();
        let kind = match (self.family, self.n_odd) {
            (Family::Forested, false) => OrientationKind::ForestedEven,
            (Family::Forested, true) => OrientationKind::ForestedOdd,
            (_, false) => OrientationKind::EdgeOrder,
            (_, true) => OrientationKind::VertexHalfEdgeOrder,
        };
        OrientationConvention::new(kind, species).with_hair_order(self.family == Family::Hairy && self.m_odd)
    }

    /// Directory name of the slice below its family directory.
    pub fn params(&self) -> String {
        let n = if self.n_odd { "nodd" } else { "neven" };
        match self.family {
            Family::Ordinary | Family::Merkulov34 | Family::Merkulov56 => {
                format!("{n}_g{}_v{}", self.loops, self.vertices)
            }
            Family::Hairy => {
                let m = if self.m_odd { "modd" } else { "meven" };
                format!("{n}_{m}_g{}_v{}_h{}", self.loops, self.vertices, self.hairs)
            }
            Family::ColoredHairy => format!("{n}_g{}_v{}_r{}", self.loops, self.vertices, self.hairs),
            Family::Forested => format!(
                "{n}_g{}_m{}_r{}_e{}{}",
                self.loops,
                self.marked,
                self.hairs,
                self.excess,
                if self.bridgeless { "_bl" } else { "" }
            ),
        }
    }
}

impl fmt::Display for SliceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.family, self.params())
    }
}
