//! Printed upper-triangular tables, one row per line, `.` for blank cells.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// The `e_{i,j}` table of `S⁴Δ₊`, columns `j = 0..=20`.
pub const E_QUARTIC: &str = include_str!("../../fixtures/e_quartic.txt");
/// The same table for the quartic ideal.
pub const I4_QUARTIC: &str = include_str!("../../fixtures/i4_quartic.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularTable {
    pub size: usize,
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl TriangularTable {
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect())
            .collect();
        let size = rows.first().map_or(0, Vec::len);
        if rows.len() != size {
            return Err(Error::Fixture(format!(
                "{} rows for {size} columns",
                rows.len()
            )));
        }
        let mut entries = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Fixture(format!("row {i} has {} cells", row.len())));
            }
            for (j, cell) in row.iter().enumerate() {
                match (j < i, *cell) {
                    (true, ".") => {}
                    (true, c) => {
                        return Err(Error::Fixture(format!(
                            "entry {c} below diagonal at ({i},{j})"
                        )))
                    }
                    (false, c) => {
                        let v = c
                            .parse()
                            .map_err(|_| Error::Fixture(format!("bad cell {c:?} at ({i},{j})")))?;
                        entries.insert((i, j), v);
                    }
                }
            }
        }
        Ok(TriangularTable { size, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        self.entries.get(&(i, j)).copied()
    }

    /// `(i, j, printed, computed)` for every cell with `j ≤ limit` that differs.
    pub fn diff(
        &self,
        computed: &BTreeMap<(usize, usize), u64>,
        limit: usize,
    ) -> Vec<(usize, usize, u64, u64)> {
        self.entries
            .iter()
            .filter(|((_, j), _)| *j <= limit)
            .filter_map(|(&(i, j), &p)| {
                let c = computed.get(&(i, j)).copied().unwrap_or(0);
                (c != p).then_some((i, j, p, c))
            })
            .collect()
    }
}

pub fn printed_e_table() -> TriangularTable {
    TriangularTable::parse(E_QUARTIC).expect("shipped fixture parses")
}

pub fn printed_i4_table() -> TriangularTable {
    TriangularTable::parse(I4_QUARTIC).expect("shipped fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_parse() {
        let e = printed_e_table();
        assert_eq!(e.size, 21);
        assert_eq!(e.entries.len(), 21 * 22 / 2);
        let row0: Vec<u64> = (0..=10).map(|j| e.get(0, j).unwrap()).collect();
        assert_eq!(row0, vec![1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 1]);
        assert_eq!(printed_i4_table().get(20, 20), Some(1));
    }

    #[test]
    fn parity_in_print() {
        for t in [printed_e_table(), printed_i4_table()] {
            for (&(i, j), &v) in &t.entries {
                if (i + j) % 2 == 1 {
                    assert_eq!(v, 0, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(TriangularTable::parse("1 0\n2 0\n").is_err());
        assert!(TriangularTable::parse("1 0\n. x\n").is_err());
        assert!(TriangularTable::parse("1 0 0\n. 0 0\n").is_err());
        let t = TriangularTable::parse("1 0\n. 3\n").unwrap();
        assert_eq!(t.get(1, 1), Some(3));
    }
}
