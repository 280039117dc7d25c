//! Constructors for the named group families.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::families::field::FiniteField;
use crate::families::spec::GroupSpec;
use crate::perm_core::ops::direct_product;
use crate::arith::gcd;
use crate::perm_core::perm::Permutation;
use crate::perm_core::table::{parse_group_text, Group, GroupTable, DEFAULT_CLOSURE_CAP};

/// Builds the group described by a spec, enumerating at most `cap`
/// elements.
pub fn build_group(spec: &GroupSpec, cap: Option<usize>) -> Result<Group> {
    match spec {
        GroupSpec::Alternating(n) => alternating(*n as usize, cap),
        GroupSpec::Symmetric(n) => symmetric(*n as usize, cap),
        GroupSpec::Cyclic(n) => cyclic(*n as usize, cap),
        GroupSpec::Dihedral(m) => dihedral(*m as usize, cap),
        GroupSpec::Psl2(q) => psl2(*q, cap),
        GroupSpec::Psl3_3 => psl3_3(),
        GroupSpec::Direct(a, b) => {
            let left = build_group(a, cap)?;
            let right = build_group(b, cap)?;
            direct_product(&left, &right, cap)
        }
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let (_, gens) = parse_group_text(&text)?;
            GroupTable::closure(gens, cap)
        }
        GroupSpec::Perm { gens, .. } => GroupTable::closure(gens.clone(), cap),
    }
}

pub fn cyclic(n: usize, cap: Option<usize>) -> Result<Group> {
    if n == 0 {
        return Err(Error::Unsupported("cyclic degree must be at least 1".into()));
    }
    let rotation = rotation_perm(n)?;
    GroupTable::closure(vec![rotation], cap)
}

pub fn symmetric(n: usize, cap: Option<usize>) -> Result<Group> {
    match n {
        0 => Err(Error::Unsupported("symmetric degree must be at least 1".into())),
        1 => GroupTable::closure(vec![Permutation::identity(1)], cap),
        _ => {
            let transposition = Permutation::from_cycles(n, &[vec![0, 1]])?;
            GroupTable::closure(vec![transposition, rotation_perm(n)?], cap)
        }
    }
}

pub fn alternating(n: usize, cap: Option<usize>) -> Result<Group> {
    match n {
        0 => Err(Error::Unsupported("alternating degree must be at least 1".into())),
        1 | 2 => GroupTable::closure(vec![Permutation::identity(n)], cap),
        3 => GroupTable::closure(vec![Permutation::from_cycles(3, &[vec![0, 1, 2]])?], cap),
        _ => {
            let three_cycle = Permutation::from_cycles(n, &[vec![0, 1, 2]])?;
            let long = if n % 2 == 1 {
                (0..n as u16).collect::<Vec<_>>()
            } else {
                (1..n as u16).collect::<Vec<_>>()
            };
            let rotation = Permutation::from_cycles(n, &[long])?;
            GroupTable::closure(vec![three_cycle, rotation], cap)
        }
    }
}

/// Dihedral group given by its order (even, at least 2).
pub fn dihedral(order: usize, cap: Option<usize>) -> Result<Group> {
    if order < 2 || order % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "dihedral order must be even and at least 2, got {order}"
        )));
    }
    let m = order / 2;
    match m {
        1 => GroupTable::closure(vec![Permutation::from_cycles(2, &[vec![0, 1]])?], cap),
        2 => GroupTable::closure(
            vec![
                Permutation::from_cycles(4, &[vec![0, 1]])?,
                Permutation::from_cycles(4, &[vec![2, 3]])?,
            ],
            cap,
        ),
        _ => {
            let rotation = rotation_perm(m)?;
            let reflection =
                Permutation::from_images((0..m).map(|i| ((m - i) % m) as u16).collect())?;
            GroupTable::closure(vec![rotation, reflection], cap)
        }
    }
}

fn rotation_perm(n: usize) -> Result<Permutation> {
    if n > u16::MAX as usize {
        return Err(Error::Unsupported(format!("degree {n} too large")));
    }
    Permutation::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())
}

/// PSL(2, q) acting on the projective line: points `[a : 1]` for each
/// field element `a` in canonical order, then `[1 : 0]` last. Generated
/// by `x -> x + 1`, `x -> l*x` (`l` spanning the squares for odd q, the
/// whole multiplicative group for even q) and `x -> -1/x`.
pub fn psl2(q: u64, cap: Option<usize>) -> Result<Group> {
    let field = FiniteField::of_order(q)?;
    let expected = q * (q * q - 1) / gcd(2, q - 1);
    let cap_value = cap.unwrap_or(DEFAULT_CLOSURE_CAP);
    if expected > cap_value as u64 {
        return Err(Error::CapExceeded { what: "closure", cap: cap_value });
    }
    let degree = (q + 1) as usize;
    let infinity = q as usize;

    let mut translate = vec![0u16; degree];
    for a in 0..q {
        translate[a as usize] = field.add(a, 1) as u16;
    }
    translate[infinity] = infinity as u16;

    let lambda = if q % 2 == 0 {
        field.generator()
    } else {
        field.mul(field.generator(), field.generator())
    };
    let mut scale = vec![0u16; degree];
    for a in 0..q {
        scale[a as usize] = field.mul(lambda, a) as u16;
    }
    scale[infinity] = infinity as u16;

    let mut invert = vec![0u16; degree];
    invert[0] = infinity as u16;
    invert[infinity] = 0;
    for a in 1..q {
        invert[a as usize] = field.neg(field.inv(a)?) as u16;
    }

    let mut gens = vec![Permutation::from_images(translate)?];
    if lambda != 1 {
        gens.push(Permutation::from_images(scale)?);
    }
    gens.push(Permutation::from_images(invert)?);

    let group = GroupTable::closure(gens, cap)?;
    if group.order() as u64 != expected {
        return Err(Error::Inconsistency(format!(
            "PSL(2,{q}) closure has order {}, expected {expected}",
            group.order()
        )));
    }
    Ok(group)
}

/// PSL(3, 3) acting on the 13 points of the projective plane over GF(3),
/// generated by the elementary transvections of SL(3, 3).
pub fn psl3_3() -> Result<Group> {
    let points: Vec<[u8; 3]> = {
        let mut pts = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    let v = [a, b, c];
                    if v != [0, 0, 0] && normalize3(v) == v {
                        pts.push(v);
                    }
                }
            }
        }
        pts
    };
    debug_assert_eq!(points.len(), 13);
    let index: HashMap<[u8; 3], usize> =
        points.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // Transvection: identity plus a single off-diagonal 1.
            let mut mat = [[0u8; 3]; 3];
            for (d, row) in mat.iter_mut().enumerate() {
                row[d] = 1;
            }
            mat[i][j] = 1;
            let images: Vec<u16> = points
                .iter()
                .map(|v| index[&normalize3(mat_vec3(&mat, v))] as u16)
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    let group = GroupTable::closure(gens, Some(6000))?;
    if group.order() != 5616 {
        return Err(Error::Inconsistency(format!(
            "PSL(3,3) closure has order {}, expected 5616",
            group.order()
        )));
    }
    Ok(group)
}

fn mat_vec3(m: &[[u8; 3]; 3], v: &[u8; 3]) -> [u8; 3] {
    let mut out = [0u8; 3];
    for r in 0..3 {
        out[r] = (0..3).map(|c| m[r][c] * v[c]).sum::<u8>() % 3;
    }
    out
}

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
fn normalize3(v: [u8; 3]) -> [u8; 3] {
    let lead = v.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if lead <= 1 {
        return v;
    }
    // The only other scalar is 2, and 2*2 = 1 mod 3.
    [(v[0] * 2) % 3, (v[1] * 2) % 3, (v[2] * 2) % 3]
}
