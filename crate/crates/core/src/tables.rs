//! Verification of the per-family solvabilizer classification tables:
//! for one representative per rational class, the size of its
//! solvabilizer and the number of maximal solvable subgroups of each
//! shape containing it are compared against closed-form cell values.

use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::lattice::{
    all_subgroups, classify_structure, max_solv_reps, MaxSolvReps, StructureTag,
};
use crate::classes::rational_classes;
use crate::perm_core::{ElemId, Group};
use crate::solvabilizer::{sol, SCHEMA_VERSION};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableFamily {
    Psl2Even,
    Psl2Odd3,
    Psl2Prime,
}

impl std::fmt::Display for TableFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TableFamily::Psl2Even => write!(f, "psl2-even"),
            TableFamily::Psl2Odd3 => write!(f, "psl2-odd-3"),
            TableFamily::Psl2Prime => write!(f, "psl2-prime"),
        }
    }
}

/// Which table applies to PSL(2, q), if any.
pub fn table_family_of(q: u64) -> Result<TableFamily> {
    if q == 7 {
        return Err(Error::NoTable(
            "q = 7 is the excluded special case (its count is 79); no table applies".into(),
        ));
    }
    match prime_power(q) {
        Some((2, n)) if n >= 2 => Ok(TableFamily::Psl2Even),
        Some((3, n)) if n >= 3 && n % 2 == 1 => Ok(TableFamily::Psl2Odd3),
        Some((p, 1)) if p >= 11 => Ok(TableFamily::Psl2Prime),
        _ => Err(Error::NoTable(format!(
            "no classification table applies to psl2:{q}"
        ))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeCheck {
    pub rep: u32,
    pub element_order: u32,
    pub column: String,
    pub expected: u64,
    pub computed: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellCheck {
    pub rep: u32,
    pub element_order: u32,
    pub column: String,
    pub row: String,
    pub expected: u64,
    pub computed: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub schema_version: u32,
    pub family: String,
    pub parameter: u64,
    /// p mod 24 for the prime family.
    pub congruence: Option<u64>,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub sol_sizes: Vec<SizeCheck>,
    pub cells: Vec<CellCheck>,
    /// False when the group is over the lattice cap, in which case only
    /// the solvabilizer sizes are verified.
    pub containment_checked: bool,
    pub structure_notes: Vec<String>,
    pub all_pass: bool,
}

struct TableSpec {
    rows: Vec<(StructureTag, String)>,
    columns: Vec<String>,
    /// counts[row][column]
    counts: Vec<Vec<u64>>,
    sizes: Vec<u64>,
    congruence: Option<u64>,
    column_of: Box<dyn Fn(u64) -> Option<usize>>,
}

fn div_exact(a: i128, b: i128) -> u64 {
    assert!(b > 0 && a >= 0 && a % b == 0, "non-exact table formula {a}/{b}");
    (a / b) as u64
}

fn even_table(q: u64) -> TableSpec {
    let n = prime_power(q).expect("power of two").1;
    let qi = q as i128;
    let row1 = if q == 4 {
        (StructureTag::A4, format!("C2^{n}:C{}", q - 1))
    } else {
        (
            StructureTag::ElemAbelianByCyclic { p: 2, k: n, m: q - 1 },
            format!("C2^{n}:C{}", q - 1),
        )
    };
    TableSpec {
        rows: vec![
            row1,
            (StructureTag::Dihedral(2 * (q - 1)), format!("D{}", 2 * (q - 1))),
            (StructureTag::Dihedral(2 * (q + 1)), format!("D{}", 2 * (q + 1))),
        ],
        columns: vec!["x=2".into(), "x|q-1".into(), "x|q+1".into()],
        counts: vec![vec![1, 2, 0], vec![q / 2, 1, 0], vec![q / 2, 0, 1]],
        sizes: vec![
            div_exact(3 * qi * (qi - 1), 1),
            div_exact(2 * qi * (qi - 1), 1),
            div_exact(2 * (qi + 1), 1),
        ],
        congruence: None,
        column_of: Box::new(move |o| {
            if o == 2 {
                Some(0)
            } else if o > 1 && (q - 1) % o == 0 {
                Some(1)
            } else if o > 1 && (q + 1) % o == 0 {
                Some(2)
            } else {
                None
            }
        }),
    }
}

fn odd3_table(q: u64) -> TableSpec {
    let n = prime_power(q).expect("power of three").1;
    let qi = q as i128;
    TableSpec {
        rows: vec![
            (
                StructureTag::ElemAbelianByCyclic { p: 3, k: n, m: (q - 1) / 2 },
                format!("C3^{n}:C{}", (q - 1) / 2),
            ),
            (StructureTag::Dihedral(q - 1), format!("D{}", q - 1)),
            (StructureTag::Dihedral(q + 1), format!("D{}", q + 1)),
            (StructureTag::A4, "A4".into()),
        ],
        columns: vec!["x=2".into(), "x=3".into(), "x|q-1".into(), "x|q+1".into()],
        counts: vec![
            vec![0, 1, 2, 0],
            vec![(q + 1) / 2, 0, 1, 0],
            vec![(q + 3) / 2, 0, 0, 1],
            vec![(q + 1) / 4, q / 3, 0, 0],
        ],
        sizes: vec![
            div_exact(qi * (qi + 1), 1),
            div_exact(qi * (qi + 5), 2),
            div_exact(qi * (qi - 1), 1),
            div_exact(qi + 1, 1),
        ],
        congruence: None,
        column_of: Box::new(move |o| match o {
            2 => Some(0),
            3 => Some(1),
            o if o > 1 && (q - 1) % o == 0 => Some(2),
            o if o > 1 && (q + 1) % o == 0 => Some(3),
            _ => None,
        }),
    }
}

fn prime_table(p: u64) -> TableSpec {
    let c = p % 24;
    let pi = p as i128;
    let has_four = c % 8 == 1 || c % 8 == 7;
    let fourth_row_is_s4 = has_four;

    let mut rows = vec![
        (
            StructureTag::ElemAbelianByCyclic { p, k: 1, m: (p - 1) / 2 },
            format!("C{p}:C{}", (p - 1) / 2),
        ),
        (StructureTag::Dihedral(p - 1), format!("D{}", p - 1)),
        (StructureTag::Dihedral(p + 1), format!("D{}", p + 1)),
    ];
    rows.push(if fourth_row_is_s4 {
        (StructureTag::S4, "S4".into())
    } else {
        (StructureTag::A4, "A4".into())
    });

    let mut columns = vec!["x=2".to_string(), "x=3".to_string()];
    if has_four {
        columns.push("x=4".into());
    }
    columns.extend(["x=p".to_string(), "x|p-1".to_string(), "x|p+1".to_string()]);

    // Count rows in column order (with the x=4 column present only when
    // order-4 elements exist), per congruence class mod 24.
    let h = |v: Vec<u64>| v;
    let (counts, sizes): (Vec<Vec<u64>>, Vec<i128>) = match c {
        1 => (
            vec![
                h(vec![2, 2, 2, 1, 2, 0]),
                h(vec![(p + 1) / 2, 1, 1, 0, 1, 0]),
                h(vec![(p - 1) / 2, 0, 0, 0, 0, 1]),
                h(vec![3 * (p - 1) / 4, (p - 1) / 3, (p - 1) / 4, 0, 0, 0]),
            ],
            vec![
                (pi - 1) * (2 * pi + 3),
                (pi - 1) * (pi + 6),
                (pi - 1) * (pi + 4),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        5 => (
            vec![
                h(vec![2, 0, 1, 2, 0]),
                h(vec![(p + 1) / 2, 0, 0, 1, 0]),
                h(vec![(p - 1) / 2, 1, 0, 0, 1]),
                h(vec![(p - 1) / 4, (p + 1) / 3, 0, 0, 0]),
            ],
            vec![
                (pi - 1) * (2 * pi - 1),
                4 * (pi + 1),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        7 => (
            vec![
                h(vec![0, 2, 0, 1, 2, 0]),
                h(vec![(p + 1) / 2, 1, 0, 0, 1, 0]),
                h(vec![(p + 3) / 2, 0, 1, 0, 0, 1]),
                h(vec![3 * (p + 1) / 4, (p - 1) / 3, (p + 1) / 4, 0, 0, 0]),
            ],
            vec![
                (pi + 1) * (pi + 4),
                (pi - 1) * (pi + 6),
                5 * (pi + 1),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        11 => (
            vec![
                h(vec![0, 0, 1, 2, 0]),
                h(vec![(p + 1) / 2, 0, 0, 1, 0]),
                h(vec![(p + 3) / 2, 1, 0, 0, 1]),
                h(vec![(p + 1) / 4, (p + 1) / 3, 0, 0, 0]),
            ],
            vec![
                pi * (pi + 1),
                4 * (pi + 1),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        13 => (
            vec![
                h(vec![2, 2, 1, 2, 0]),
                h(vec![(p + 1) / 2, 1, 0, 1, 0]),
                h(vec![(p - 1) / 2, 0, 0, 0, 1]),
                h(vec![(p - 1) / 4, (p - 1) / 3, 0, 0, 0]),
            ],
            vec![
                (pi - 1) * (2 * pi - 1),
                (pi - 1) * (pi + 3),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        17 => (
            vec![
                h(vec![2, 0, 2, 1, 2, 0]),
                h(vec![(p + 1) / 2, 0, 1, 0, 1, 0]),
                h(vec![(p - 1) / 2, 1, 0, 0, 0, 1]),
                h(vec![3 * (p - 1) / 4, (p + 1) / 3, (p - 1) / 4, 0, 0, 0]),
            ],
            vec![
                (pi - 1) * (2 * pi + 3),
                7 * (pi + 1),
                (pi - 1) * (pi + 4),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        19 => (
            vec![
                h(vec![0, 2, 1, 2, 0]),
                h(vec![(p + 1) / 2, 1, 0, 1, 0]),
                h(vec![(p + 3) / 2, 0, 0, 0, 1]),
                h(vec![(p + 1) / 4, (p - 1) / 3, 0, 0, 0]),
            ],
            vec![
                pi * (pi + 1),
                (pi - 1) * (pi + 3),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        23 => (
            vec![
                h(vec![0, 0, 0, 1, 2, 0]),
                h(vec![(p + 1) / 2, 0, 0, 0, 1, 0]),
                h(vec![(p + 3) / 2, 1, 1, 0, 0, 1]),
                h(vec![3 * (p + 1) / 4, (p + 1) / 3, (p + 1) / 4, 0, 0, 0]),
            ],
            vec![
                (pi + 1) * (pi + 4),
                7 * (pi + 1),
                5 * (pi + 1),
                pi * (pi - 1) / 2,
                pi * (pi - 1),
                pi + 1,
            ],
        ),
        _ => unreachable!("primes above 3 are coprime to 24"),
    };
    let sizes = sizes.into_iter().map(|s| div_exact(s, 1)).collect();

    TableSpec {
        rows,
        columns,
        counts,
        sizes,
        congruence: Some(c),
        column_of: Box::new(move |o| {
            let base = match o {
                2 => Some(0),
                3 => Some(1),
                4 => has_four.then_some(2),
                o if o == p => Some(if has_four { 3 } else { 2 }),
                o if o > 1 && (p - 1) % o == 0 => Some(if has_four { 4 } else { 3 }),
                o if o > 1 && (p + 1) % o == 0 => Some(if has_four { 5 } else { 4 }),
                _ => None,
            };
            base
        }),
    }
}

/// Counts the conjugates `H^t` of one maximal-solvable class that
/// contain `x`, walking the stored transversal of the normalizer.
fn containment_count(g: &Group, reps: &MaxSolvReps, tag: StructureTag, x: ElemId) -> u64 {
    let mut count = 0;
    for class in &reps.classes {
        if classify_structure(g, &class.rep) != tag {
            continue;
        }
        for &t in class.transversal.reps() {
            let pulled_back = g.mul(g.mul(t, x), g.inv(t));
            if class.rep.contains(pulled_back) {
                count += 1;
            }
        }
    }
    count
}

/// Verifies the classification table for `PSL(2, parameter)` against the
/// given group. Containment counts require the subgroup lattice and are
/// skipped (and flagged) when the group is over `lattice_cap`.
pub fn verify_table(
    g: &Group,
    family: TableFamily,
    parameter: u64,
    lattice_cap: usize,
) -> Result<TableReport> {
    let spec = match family {
        TableFamily::Psl2Even => even_table(parameter),
        TableFamily::Psl2Odd3 => odd3_table(parameter),
        TableFamily::Psl2Prime => prime_table(parameter),
    };

    let mut structure_notes = Vec::new();
    let containment_checked = g.order() <= lattice_cap;
    let reps = if containment_checked {
        let lattice = all_subgroups(g, lattice_cap)?;
        let reps = max_solv_reps(g, &lattice)?;
        for class in &reps.classes {
            let tag = classify_structure(g, &class.rep);
            if !spec.rows.iter().any(|(t, _)| *t == tag) {
                structure_notes.push(format!(
                    "maximal solvable class of order {} has unexpected shape {tag}",
                    class.rep.len()
                ));
            }
        }
        Some(reps)
    } else {
        None
    };

    let mut sol_sizes = Vec::new();
    let mut cells = Vec::new();
    for rc in rational_classes(g) {
        if rc.rep == g.identity() {
            continue;
        }
        let order = rc.element_order as u64;
        let col = (spec.column_of)(order).ok_or_else(|| {
            Error::Inconsistency(format!("element order {order} fits no table column"))
        })?;
        let computed_size = sol(g, rc.rep)?.len() as u64;
        sol_sizes.push(SizeCheck {
            rep: rc.rep.0,
            element_order: rc.element_order,
            column: spec.columns[col].clone(),
            expected: spec.sizes[col],
            computed: computed_size,
            pass: computed_size == spec.sizes[col],
        });
        if let Some(reps) = &reps {
            for (ri, (tag, label)) in spec.rows.iter().enumerate() {
                let computed = containment_count(g, reps, *tag, rc.rep);
                let expected = spec.counts[ri][col];
                cells.push(CellCheck {
                    rep: rc.rep.0,
                    element_order: rc.element_order,
                    column: spec.columns[col].clone(),
                    row: label.clone(),
                    expected,
                    computed,
                    pass: computed == expected,
                });
            }
        }
    }

    let all_pass = sol_sizes.iter().all(|c| c.pass)
        && cells.iter().all(|c| c.pass)
        && structure_notes.is_empty();
    Ok(TableReport {
        schema_version: SCHEMA_VERSION,
        family: family.to_string(),
        parameter,
        congruence: spec.congruence,
        rows: spec.rows.iter().map(|(_, l)| l.clone()).collect(),
        columns: spec.columns.clone(),
        sol_sizes,
        cells,
        containment_checked,
        structure_notes,
        all_pass,
    })
}

/// Plain-text rendering, one block per rational class column entry.
pub fn render_table_report(report: &TableReport) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "table {} (parameter {}{}): {}",
        report.family,
        report.parameter,
        report
            .congruence
            .map(|c| format!(", {} mod 24", c))
            .unwrap_or_default(),
        if report.all_pass { "PASS" } else { "FAIL" }
    );
    for note in &report.structure_notes {
        let _ = writeln!(out, "  note: {note}");
    }
    let _ = writeln!(out, "  solvabilizer sizes:");
    for s in &report.sol_sizes {
        let _ = writeln!(
            out,
            "    rep {:>4} (order {:>3}, {:>6}): expected {:>8} computed {:>8} {}",
            s.rep,
            s.element_order,
            s.column,
            s.expected,
            s.computed,
            if s.pass { "ok" } else { "MISMATCH" }
        );
    }
    if report.containment_checked {
        let _ = writeln!(out, "  containment counts:");
        for c in &report.cells {
            let _ = writeln!(
                out,
                "    rep {:>4} (order {:>3}, {:>6}) in {:>12}: expected {:>6} computed {:>6} {}",
                c.rep,
                c.element_order,
                c.column,
                c.row,
                c.expected,
                c.computed,
                if c.pass { "ok" } else { "MISMATCH" }
            );
        }
    } else {
        let _ = writeln!(out, "  containment counts skipped (group above lattice cap)");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_detection() {
        assert_eq!(table_family_of(4).unwrap(), TableFamily::Psl2Even);
        assert_eq!(table_family_of(8).unwrap(), TableFamily::Psl2Even);
        assert_eq!(table_family_of(27).unwrap(), TableFamily::Psl2Odd3);
        assert_eq!(table_family_of(11).unwrap(), TableFamily::Psl2Prime);
        assert!(matches!(table_family_of(7), Err(Error::NoTable(_))));
        assert!(matches!(table_family_of(9), Err(Error::NoTable(_))));
        assert!(matches!(table_family_of(5), Err(Error::NoTable(_))));
        assert!(matches!(table_family_of(6), Err(Error::NoTable(_))));
    }

    #[test]
    fn prime_table_columns_partition_element_orders() {
        // For p = 11: orders are 1, 2, 3, 5, 6, 11.
        let spec = prime_table(11);
        assert_eq!(spec.columns.len(), 5);
        assert_eq!((spec.column_of)(2), Some(0));
        assert_eq!((spec.column_of)(3), Some(1));
        assert_eq!((spec.column_of)(11), Some(2));
        assert_eq!((spec.column_of)(5), Some(3));
        assert_eq!((spec.column_of)(6), Some(4));
        // p = 13 has order-4 absent too (13 = 5 mod 8).
        let spec13 = prime_table(13);
        assert_eq!(spec13.columns.len(), 5);
        assert_eq!((spec13.column_of)(7), Some(4));
        assert_eq!((spec13.column_of)(6), Some(3));
    }

    #[test]
    fn even_table_values_at_8() {
        let spec = even_table(8);
        assert_eq!(spec.sizes, vec![168, 112, 18]);
        assert_eq!(spec.counts[0], vec![1, 2, 0]);
        assert_eq!(spec.counts[1], vec![4, 1, 0]);
        assert_eq!(spec.counts[2], vec![4, 0, 1]);
    }

    #[test]
    fn odd3_table_values_at_27() {
        let spec = odd3_table(27);
        assert_eq!(spec.sizes, vec![756, 432, 702, 28]);
        assert_eq!(spec.counts[3], vec![7, 9, 0, 0]);
    }

    #[test]
    fn prime_table_values_at_11() {
        let spec = prime_table(11);
        assert_eq!(spec.congruence, Some(11));
        assert_eq!(spec.sizes, vec![132, 48, 55, 110, 12]);
        assert_eq!(spec.counts[3], vec![3, 4, 0, 0, 0]);
    }
}
