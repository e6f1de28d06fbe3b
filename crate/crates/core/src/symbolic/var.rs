//! Variables, packed into a single ordered word.

use std::fmt;

use crate::error::{Error, Result};

/// Names available for auxiliary variables, in their sort order.
pub const AUX_NAMES: &[&str] = &["a", "b", "c", "s", "t", "u", "v", "w", "xi"];

const KIND_SHIFT: u32 = 62;
const NAME_SHIFT: u32 = 56;
const MAJOR_SHIFT: u32 = 28;
const FIELD_MASK: u64 = (1 << 28) - 1;

/// A formal variable.
///
/// Roots come first in the total order, then residue variables, then
/// auxiliary ones; inside a kind the order is by name, major, minor index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u64);

/// Decoded view of a [`Var`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    /// Chern root `index` of the bundle at `vertex`.
    Root { vertex: u32, index: u32 },
    /// Residue variable `index` of step `step`.
    Residue { step: u32, index: u32 },
    /// Auxiliary variable such as `v1_2` or `xi`.
    Aux { name: &'static str, major: u32, minor: u32 },
}

impl Var {
    fn pack(kind: u64, name: u64, major: u32, minor: u32) -> Var {
        assert!((major as u64) <= FIELD_MASK && (minor as u64) <= FIELD_MASK);
        Var((kind << KIND_SHIFT) | (name << NAME_SHIFT) | ((major as u64) << MAJOR_SHIFT) | minor as u64)
    }

    pub fn root(vertex: u32, index: u32) -> Var {
        Var::pack(0, 0, vertex, index)
    }

    pub fn residue(step: u32, index: u32) -> Var {
        Var::pack(1, 0, step, index)
    }

    /// Panics if `name` is not one of [`AUX_NAMES`].
    pub fn aux(name: &str, major: u32, minor: u32) -> Var {
        let id = AUX_NAMES
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("unknown auxiliary name {name}"));
        Var::pack(2, id as u64, major, minor)
    }

    pub fn kind(self) -> VarKind {
        let major = ((self.0 >> MAJOR_SHIFT) & FIELD_MASK) as u32;
        let minor = (self.0 & FIELD_MASK) as u32;
        match self.0 >> KIND_SHIFT {
            0 => VarKind::Root {
                vertex: major,
                index: minor,
            },
            1 => VarKind::Residue {
                step: major,
                index: minor,
            },
            _ => VarKind::Aux {
                name: AUX_NAMES[((self.0 >> NAME_SHIFT) & 0x3f) as usize],
                major,
                minor,
            },
        }
    }

    /// The `(major, minor)` index pair regardless of kind.
    pub fn indices(self) -> (u32, u32) {
        (
            ((self.0 >> MAJOR_SHIFT) & FIELD_MASK) as u32,
            (self.0 & FIELD_MASK) as u32,
        )
    }

    /// Parses the display form produced by `Display`.
    pub fn parse(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("bad variable `{s}`"));
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, rest) = s.split_at(split);
        let (major, minor) = if rest.is_empty() {
            (0, 0)
        } else {
            let (a, b) = rest.split_once('_').ok_or_else(bad)?;
            (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
        };
        match name {
            "e" if !rest.is_empty() => Ok(Var::root(major, minor)),
            "z" if !rest.is_empty() => Ok(Var::residue(major, minor)),
            _ if AUX_NAMES.contains(&name) => Ok(Var::aux(name, major, minor)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            VarKind::Root { vertex, index } => write!(f, "e{vertex}_{index}"),
            VarKind::Residue { step, index } => write!(f, "z{step}_{index}"),
            VarKind::Aux {
                name,
                major: 0,
                minor: 0,
            } => write!(f, "{name}"),
            VarKind::Aux { name, major, minor } => write!(f, "{name}{major}_{minor}"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_roundtrip() {
        let vs = [
            Var::root(1, 2),
            Var::root(2, 1),
            Var::residue(1, 1),
            Var::aux("c", 3, 1),
            Var::aux("v", 1, 2),
            Var::aux("xi", 0, 0),
        ];
        for w in vs.windows(2) {
            assert!(w[0] < w[1]);
        }
        for v in vs {
            assert_eq!(Var::parse(&v.to_string()).unwrap(), v);
        }
        assert_eq!(Var::aux("xi", 0, 0).to_string(), "xi");
        assert!(Var::parse("q1_1").is_err());
        assert!(Var::parse("e").is_err());
    }
}
