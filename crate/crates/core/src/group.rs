//! Grading groups: ℤⁿ, ℤ/nℤ, and finite groups given by a multiplication table.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GradingGroup {
    FreeAbelian(usize),
    Cyclic(u64),
    Table(TableGroup),
}

/// A finite group by multiplication table, validated at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl TableGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(
                "table must be square with entries below its size".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableGroup {
            table,
            identity,
            inverses,
        })
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }
}

/// Group element; the variant always matches the owning group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElt {
    Free(Vec<i64>),
    Cyclic(u64),
    Table(usize),
}

impl GroupElt {
    /// Integer coordinates, as written inside `u[...]`.
    pub fn coords(&self) -> Vec<i64> {
        match self {
            GroupElt::Free(v) => v.clone(),
            GroupElt::Cyclic(r) => vec![*r as i64],
            GroupElt::Table(i) => vec![*i as i64],
        }
    }
}

impl fmt::Display for GroupElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        if c.len() == 1 {
            write!(f, "{}", c[0])
        } else {
            let parts: Vec<String> = c.iter().map(i64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl GradingGroup {
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic modulus must be at least 1".into()));
        }
        Ok(GradingGroup::Cyclic(n))
    }

    pub fn free(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidGroup("free abelian rank must be at least 1".into()));
        }
        Ok(GradingGroup::FreeAbelian(rank))
    }

    pub fn table(table: Vec<Vec<usize>>) -> Result<Self> {
        TableGroup::new(table).map(GradingGroup::Table)
    }

    /// Number of coordinates in `u[...]`.
    pub fn rank(&self) -> usize {
        match self {
            GradingGroup::FreeAbelian(n) => *n,
            _ => 1,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GradingGroup::FreeAbelian(_) => None,
            GradingGroup::Cyclic(n) => Some(*n as usize),
            GradingGroup::Table(t) => Some(t.size()),
        }
    }

    pub fn identity(&self) -> GroupElt {
        match self {
            GradingGroup::FreeAbelian(n) => GroupElt::Free(vec![0; *n]),
            GradingGroup::Cyclic(_) => GroupElt::Cyclic(0),
            GradingGroup::Table(t) => GroupElt::Table(t.identity),
        }
    }

    pub fn contains(&self, g: &GroupElt) -> bool {
        match (self, g) {
            (GradingGroup::FreeAbelian(n), GroupElt::Free(v)) => v.len() == *n,
            (GradingGroup::Cyclic(n), GroupElt::Cyclic(r)) => r < n,
            (GradingGroup::Table(t), GroupElt::Table(i)) => *i < t.size(),
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElt) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{g} is not an element of {self}")))
        }
    }

    /// Element from `u[...]` coordinates (cyclic residues are reduced).
    pub fn element(&self, coords: &[i64]) -> Result<GroupElt> {
        let mismatch = || {
            Error::GroupMismatch(format!(
                "degree has {} coordinate(s), group {self} needs {}",
                coords.len(),
                self.rank()
            ))
        };
        match self {
            GradingGroup::FreeAbelian(n) => {
                if coords.len() != *n {
                    return Err(mismatch());
                }
                Ok(GroupElt::Free(coords.to_vec()))
            }
            GradingGroup::Cyclic(n) => match coords {
                [r] => Ok(GroupElt::Cyclic(r.rem_euclid(*n as i64) as u64)),
                _ => Err(mismatch()),
            },
            GradingGroup::Table(t) => match coords {
                [i] if *i >= 0 && (*i as usize) < t.size() => Ok(GroupElt::Table(*i as usize)),
                [i] => Err(Error::GroupMismatch(format!(
                    "no element {i} in a group of order {}",
                    t.size()
                ))),
                _ => Err(mismatch()),
            },
        }
    }

    pub fn op(&self, g: &GroupElt, h: &GroupElt) -> GroupElt {
        match (self, g, h) {
            (GradingGroup::FreeAbelian(_), GroupElt::Free(a), GroupElt::Free(b)) => {
                GroupElt::Free(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GradingGroup::Cyclic(n), GroupElt::Cyclic(a), GroupElt::Cyclic(b)) => GroupElt::Cyclic((a + b) % n),
            (GradingGroup::Table(t), GroupElt::Table(a), GroupElt::Table(b)) => GroupElt::Table(t.table[*a][*b]),
            _ => panic!("group element does not belong to {self}"),
        }
    }

    pub fn inv(&self, g: &GroupElt) -> GroupElt {
        match (self, g) {
            (GradingGroup::FreeAbelian(_), GroupElt::Free(a)) => GroupElt::Free(a.iter().map(|x| -x).collect()),
            (GradingGroup::Cyclic(n), GroupElt::Cyclic(a)) => GroupElt::Cyclic((n - a) % n),
            (GradingGroup::Table(t), GroupElt::Table(a)) => GroupElt::Table(t.inverses[*a]),
            _ => panic!("group element does not belong to {self}"),
        }
    }

    pub fn is_identity(&self, g: &GroupElt) -> bool {
        *g == self.identity()
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &GroupElt, k: i64) -> GroupElt {
        match (self, g) {
            (GradingGroup::FreeAbelian(_), GroupElt::Free(a)) => GroupElt::Free(a.iter().map(|x| x * k).collect()),
            (GradingGroup::Cyclic(n), GroupElt::Cyclic(a)) => {
                GroupElt::Cyclic(((*a as i128 * k as i128).rem_euclid(*n as i128)) as u64)
            }
            _ => {
                let base = if k < 0 { self.inv(g) } else { g.clone() };
                (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.op(&acc, &base))
            }
        }
    }

    /// Finite verification domain: the box `[−radius, radius]ⁿ` for ℤⁿ,
    /// every element for finite groups. Sorted in the canonical order.
    pub fn window(&self, radius: i64) -> Vec<GroupElt> {
        match self {
            GradingGroup::FreeAbelian(n) => {
                let mut out = vec![Vec::new()];
                for _ in 0..*n {
                    out = out
                        .into_iter()
                        .flat_map(|v| {
                            (-radius..=radius).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                out.into_iter().map(GroupElt::Free).collect()
            }
            GradingGroup::Cyclic(n) => (0..*n).map(GroupElt::Cyclic).collect(),
            GradingGroup::Table(t) => (0..t.size()).map(GroupElt::Table).collect(),
        }
    }

    /// Canonical tag used in ring documents (tables are serialised separately).
    pub fn tag(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingGroup::FreeAbelian(1) => write!(f, "Z"),
            GradingGroup::FreeAbelian(n) => write!(f, "Z^{n}"),
            GradingGroup::Cyclic(n) => write!(f, "C{n}"),
            GradingGroup::Table(t) => write!(f, "table({})", t.size()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Vec<Vec<usize>> {
        (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
    }

    #[test]
    fn table_group_derives_identity_and_inverses() {
        let g = GradingGroup::table(klein()).unwrap();
        assert_eq!(g.identity(), GroupElt::Table(0));
        for x in g.window(0) {
            assert_eq!(g.inv(&x), x);
        }
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(GradingGroup::table(vec![]).is_err());
        assert!(GradingGroup::table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GradingGroup::table(vec![vec![0, 1], vec![1]]).is_err());
        // identity exists, every element has an inverse, but not associative
        let bad = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(GradingGroup::table(bad), Err(Error::InvalidGroup(_))));
        assert!(GradingGroup::cyclic(0).is_err());
    }

    #[test]
    fn cyclic_and_free_arithmetic() {
        let c3 = GradingGroup::cyclic(3).unwrap();
        let g = c3.element(&[-1]).unwrap();
        assert_eq!(g, GroupElt::Cyclic(2));
        assert_eq!(c3.op(&g, &g), GroupElt::Cyclic(1));
        assert_eq!(c3.pow(&g, -4), GroupElt::Cyclic(1));
        let z2 = GradingGroup::free(2).unwrap();
        assert_eq!(z2.window(1).len(), 9);
        assert!(z2.element(&[1]).is_err());
        assert_eq!(z2.inv(&GroupElt::Free(vec![1, -2])), GroupElt::Free(vec![-1, 2]));
    }

    #[test]
    fn window_is_sorted() {
        let z = GradingGroup::free(1).unwrap();
        let w = z.window(2);
        let mut s = w.clone();
        s.sort();
        assert_eq!(w, s);
    }
}
