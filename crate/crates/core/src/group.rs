//! Finite groups given by Cayley tables, with the identity at index 0.

use std::fmt;

use thiserror::Error;

use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    InvalidOrder,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) = {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("identity must be index 0: 0*{0} or {0}*0 differs from {0}")]
    IdentityNotAtZero(usize),
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
}

/// A finite group stored as its multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl std::hash::Hash for Group {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("order", &self.order).finish()
    }
}

impl Group {
    /// The cyclic group `Z/nZ` with `table[a][b] = (a + b) mod n`.
    pub fn cyclic(n: usize) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push((a + b) % n);
            }
        }
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let labels = (0..n).map(|a| a.to_string()).collect();
        Ok(Group {
            order: n,
            table,
            inverse,
            labels,
        })
    }

    /// The dihedral group of order `2m`, elements ordered
    /// `e, a, .., a^(m-1), b, ab, .., a^(m-1)b`.
    ///
    /// Index `i + s*m` stands for `a^i b^s`, and
    /// `a^i b^s * a^j b^t = a^(i + (-1)^s j) b^(s+t)`.
    pub fn dihedral(m: usize) -> Result<Group, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidOrder);
        }
        let n = 2 * m;
        let decode = |x: usize| (x % m, x / m);
        let encode = |i: usize, s: usize| i + (s % 2) * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (i, s) = decode(x);
                let (j, t) = decode(y);
                let rot = if s == 0 { (i + j) % m } else { (i + m - j) % m };
                table.push(encode(rot, s + t));
            }
        }
        let mut inverse = vec![0; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x * n + y] == 0)
                .expect("group element without inverse");
        }
        let power = |i: usize| match i {
            0 => String::new(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        };
        let labels = (0..n)
            .map(|x| {
                let (i, s) = decode(x);
                match (i, s) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => power(i),
                    _ => format!("{}b", power(i)),
                }
            })
            .collect();
        Ok(Group {
            order: n,
            table,
            inverse,
            labels,
        })
    }

    /// Validates a raw table. Elements are labelled by their indices.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Group, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidOrder);
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
        for (x, row) in rows.iter().enumerate() {
            if rows[0][x] != x || row[0] != x {
                return Err(GroupError::IdentityNotAtZero(x));
            }
        }
        for (r, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::RowNotPermutation(r));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for row in rows {
                if std::mem::replace(&mut seen[row[c]], true) {
                    return Err(GroupError::ColumnNotPermutation(c));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a * n + b] == 0)
                    .expect("rows are permutations")
            })
            .collect();
        Ok(Group {
            order: n,
            table,
            inverse,
            labels: (0..n).map(|a| a.to_string()).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Replaces element labels, e.g. after loading a table from a file.
    pub fn with_labels(mut self, labels: Vec<String>) -> Group {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = labels;
        self
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: ElemSet::from_members(self.order, [0]),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: ElemSet::full(self.order),
        }
    }

    /// Partition of the group into double cosets `HσH`, sorted by least member.
    pub fn double_cosets(&self, h: &Subgroup) -> Result<Vec<ElemSet>, GroupError> {
        h.check(self)?;
        let n = self.order;
        let mut covered = ElemSet::empty(n);
        let mut classes = Vec::new();
        for s in 0..n {
            if covered.contains(s) {
                continue;
            }
            let class = self.double_coset(h, s);
            covered.union_with(&class);
            classes.push(class);
        }
        Ok(classes)
    }

    /// The double coset `HσH` of a single element.
    pub fn double_coset(&self, h: &Subgroup, s: usize) -> ElemSet {
        let mut class = ElemSet::empty(self.order);
        for h1 in h.iter() {
            let left = self.mul(h1, s);
            for h2 in h.iter() {
                class.insert(self.mul(left, h2));
            }
        }
        class
    }
}

/// A subgroup, stored as its member set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElemSet,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{}", self.members)
    }
}

impl Subgroup {
    pub fn new(group: &Group, members: ElemSet) -> Result<Subgroup, GroupError> {
        let h = Subgroup { members };
        h.check(group)?;
        Ok(h)
    }

    fn check(&self, group: &Group) -> Result<(), GroupError> {
        if self.members.universe() != group.order() {
            return Err(GroupError::InvalidSubgroup(
                "member set has wrong universe".into(),
            ));
        }
        if !self.members.contains(0) {
            return Err(GroupError::InvalidSubgroup("identity missing".into()));
        }
        for a in self.members.iter() {
            if !self.members.contains(group.inv(a)) {
                return Err(GroupError::InvalidSubgroup(format!(
                    "inverse of {a} missing"
                )));
            }
            for b in self.members.iter() {
                if !self.members.contains(group.mul(a, b)) {
                    return Err(GroupError::InvalidSubgroup(format!(
                        "product {a}*{b} escapes"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_examples() {
        assert_eq!(Group::cyclic(1).unwrap().rows(), vec![vec![0]]);
        let z9 = Group::cyclic(9).unwrap();
        assert_eq!(z9.mul(5, 8), 4);
        assert_eq!(Group::cyclic(4).unwrap().inv(3), 1);
        assert_eq!(Group::cyclic(0), Err(GroupError::InvalidOrder));
    }

    #[test]
    fn dihedral_examples() {
        let d3 = Group::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert_eq!(d3.mul(3, 1), 5);
        assert_eq!(d3.mul(5, 1), 4);
        let names: Vec<&str> = (0..6).map(|x| d3.label(x)).collect();
        assert_eq!(names, ["e", "a", "a^2", "b", "ab", "a^2b"]);
        assert_eq!(Group::dihedral(1).unwrap(), Group::cyclic(2).unwrap());
        assert_eq!(Group::dihedral(0), Err(GroupError::InvalidOrder));
    }

    #[test]
    fn table_validation() {
        assert_eq!(Group::from_table(&[vec![0]]).unwrap().order(), 1);
        let z9 = Group::cyclic(9).unwrap();
        assert_eq!(Group::from_table(&z9.rows()).unwrap(), z9);
        assert_eq!(
            Group::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::RowNotPermutation(1))
        );
        assert_eq!(
            Group::from_table(&[vec![1, 0], vec![0, 1]]),
            Err(GroupError::IdentityNotAtZero(0))
        );
        // a Latin square with identity 0 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            Group::from_table(&loop5),
            Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn double_coset_examples() {
        let z9 = Group::cyclic(9).unwrap();
        assert_eq!(z9.double_cosets(&z9.trivial_subgroup()).unwrap().len(), 9);
        assert_eq!(z9.double_cosets(&z9.whole()).unwrap().len(), 1);

        let d3 = Group::dihedral(3).unwrap();
        let h = Subgroup::new(&d3, ElemSet::from_members(6, [0, 3])).unwrap();
        let classes = d3.double_cosets(&h).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].to_vec(), vec![0, 3]);
        assert_eq!(classes[1].to_vec(), vec![1, 2, 4, 5]);

        let not_sub = ElemSet::from_members(6, [0, 1]);
        assert!(Subgroup::new(&d3, not_sub).is_err());
    }

    fn subgroups(g: &Group) -> Vec<Subgroup> {
        let n = g.order();
        (0u32..(1 << n))
            .filter_map(|mask| {
                let set = ElemSet::from_members(n, (0..n).filter(|i| mask >> i & 1 == 1));
                Subgroup::new(g, set).ok()
            })
            .collect()
    }

    proptest! {
        #[test]
        fn builders_pass_validation(n in 1usize..=12, m in 1usize..=6) {
            let c = Group::cyclic(n).unwrap();
            prop_assert_eq!(&Group::from_table(&c.rows()).unwrap(), &c);
            let d = Group::dihedral(m).unwrap();
            prop_assert_eq!(&Group::from_table(&d.rows()).unwrap(), &d);
        }

        #[test]
        fn double_cosets_partition(n in 1usize..=12, dihedral in any::<bool>(), pick in any::<prop::sample::Index>()) {
            let g = if dihedral && n % 2 == 0 { Group::dihedral(n / 2).unwrap() } else { Group::cyclic(n).unwrap() };
            let subs = subgroups(&g);
            let h = pick.get(&subs);
            let classes = g.double_cosets(h).unwrap();
            let mut seen = ElemSet::empty(n);
            for c in &classes {
                prop_assert!(seen.is_disjoint(c));
                seen.union_with(c);
            }
            prop_assert_eq!(seen.len(), n);
            for s in 0..n {
                for t in 0..n {
                    let brute = h.iter().any(|h1| h.iter().any(|h2| g.mul(g.mul(h1, t), h2) == s));
                    let same = classes.iter().any(|c| c.contains(s) && c.contains(t));
                    prop_assert_eq!(brute, same);
                }
            }
        }
    }
}
