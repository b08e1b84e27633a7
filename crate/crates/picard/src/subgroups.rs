//! Finite subgroups of Gamma: breadth-first closure, structure fingerprints,
//! and identification against the small catalog of groups appearing in the
//! classification (trivial, Z2, Z4, Z8, Z12, Z2xZ4, S3, and the order-32
//! group "G31").
//!
//! Isomorphism identification is by fingerprint, not by general isomorphism
//! testing: every group in the catalog is distinguishable by (order, abelian,
//! exponent, order statistics). The order-32 group is pinned by its full
//! computed fingerprint rather than by an external small-group label.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hermitian::GMatrix;

pub const DEFAULT_CLOSURE_CAP: usize = 256;

/// A finite subgroup, enumerated explicitly. `elements` is sorted by the
/// canonical matrix order and always contains the identity.
#[derive(Clone, Debug)]
pub struct SubgroupClosure {
    pub generators: Vec<GMatrix>,
    pub elements: Vec<GMatrix>,
}

/// Invariants of a finite group computable from its element list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u32,
    /// element order -> count; counts sum to `order`.
    pub order_statistics: BTreeMap<u32, usize>,
    pub center_order: usize,
    pub derived_subgroup_order: usize,
}

/// Labels of the catalog groups.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Label {
    #[serde(rename = "trivial")]
    Trivial,
    Z2,
    Z4,
    Z8,
    Z12,
    Z2xZ4,
    S3,
    G31,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::Trivial => "trivial",
            Label::Z2 => "Z2",
            Label::Z4 => "Z4",
            Label::Z8 => "Z8",
            Label::Z12 => "Z12",
            Label::Z2xZ4 => "Z2xZ4",
            Label::S3 => "S3",
            Label::G31 => "G31",
            Label::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// The golden fingerprint of G31 = <eps w, xi^2>, recorded from the closure
/// computation itself (order 32, nonabelian, exponent 8, element orders
/// 1:1, 2:7, 4:16, 8:8, center of order 4, derived subgroup of order 4).
pub fn g31_fingerprint() -> StructureFingerprint {
    StructureFingerprint {
        order: 32,
        abelian: false,
        exponent: 8,
        order_statistics: BTreeMap::from([(1, 1), (2, 7), (4, 16), (8, 8)]),
        center_order: 4,
        derived_subgroup_order: 4,
    }
}

/// Breadth-first closure of `gens` under multiplication; fails once more than
/// `cap` distinct elements appear (infinite or unexpectedly large group).
/// Every generator must be a Gamma member.
pub fn closure(gens: &[GMatrix], cap: usize) -> Result<SubgroupClosure> {
    for g in gens {
        if !g.is_gamma_member() {
            return Err(Error::NotInGamma("closure generator"));
        }
    }
    let mut seen: HashSet<GMatrix> = HashSet::new();
    let mut frontier = vec![GMatrix::identity()];
    seen.insert(GMatrix::identity());
    while let Some(g) = frontier.pop() {
        for h in gens {
            let next = &g * h;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
                frontier.push(next);
            }
        }
    }
    let mut elements: Vec<GMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(SubgroupClosure {
        generators: gens.to_vec(),
        elements,
    })
}

impl SubgroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn trivial() -> Self {
        SubgroupClosure {
            generators: Vec::new(),
            elements: vec![GMatrix::identity()],
        }
    }

    pub fn contains(&self, g: &GMatrix) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Element-set inclusion.
    pub fn is_subgroup_of(&self, other: &SubgroupClosure) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn same_elements(&self, other: &SubgroupClosure) -> bool {
        self.elements == other.elements
    }

    pub fn fingerprint(&self) -> StructureFingerprint {
        let n = self.order();
        let cap = n as u32;
        let mut stats: BTreeMap<u32, usize> = BTreeMap::new();
        let mut exponent: u32 = 1;
        for g in &self.elements {
            let k = g.order(cap).expect("element order divides group order");
            *stats.entry(k).or_insert(0) += 1;
            exponent = lcm(exponent, k);
        }
        let commutes_with_all =
            |a: &GMatrix| self.elements.iter().all(|b| (a * b) == (b * a));
        let abelian = self.elements.iter().all(commutes_with_all);
        let center_order = self
            .elements
            .iter()
            .filter(|a| commutes_with_all(a))
            .count();
        let derived_subgroup_order = self.derived_subgroup_order();
        StructureFingerprint {
            order: n,
            abelian,
            exponent,
            order_statistics: stats,
            center_order,
            derived_subgroup_order,
        }
    }

    /// Order of the subgroup generated by all commutators [a,b] = a b a' b'.
    fn derived_subgroup_order(&self) -> usize {
        let mut commutators: HashSet<GMatrix> = HashSet::new();
        for a in &self.elements {
            let ai = a.adjugate(); // det = 1 inside Gamma
            for b in &self.elements {
                let bi = b.adjugate();
                commutators.insert(&(&(a * b) * &ai) * &bi);
            }
        }
        // closure within the (finite) ambient group
        let gens: Vec<GMatrix> = commutators.into_iter().collect();
        let mut seen: HashSet<GMatrix> = HashSet::new();
        let mut frontier = vec![GMatrix::identity()];
        seen.insert(GMatrix::identity());
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let next = &g * h;
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.len()
    }

    /// Decides the catalog label from the fingerprint. Cyclic groups are
    /// recognized by exponent = order; Z2xZ4 by (order 8, abelian,
    /// exponent 4); S3 as the unique nonabelian order-6 group; G31 by its
    /// golden fingerprint. Anything else is Unknown.
    pub fn identify(&self) -> Label {
        let fp = self.fingerprint();
        match (fp.order, fp.abelian) {
            (1, _) => Label::Trivial,
            (2, _) => Label::Z2,
            (4, true) if fp.exponent == 4 => Label::Z4,
            (8, true) if fp.exponent == 8 => Label::Z8,
            (8, true) if fp.exponent == 4 => Label::Z2xZ4,
            (12, true) if fp.exponent == 12 => Label::Z12,
            (6, false) => Label::S3,
            (32, false) if fp == g31_fingerprint() => Label::G31,
            _ => Label::Unknown,
        }
    }

    /// JSON report: {generators, order, label, order_statistics, center_order}.
    pub fn report(&self) -> serde_json::Value {
        let fp = self.fingerprint();
        json!({
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "order": fp.order,
            "label": self.identify().to_string(),
            "order_statistics": fp.order_statistics
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<String, usize>>(),
            "center_order": fp.center_order,
        })
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}
