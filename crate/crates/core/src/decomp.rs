//! Linear sums of antichains and their forbidden suborders.
//!
//! A partial order is a linear sum of antichains exactly when the reflexive
//! closure of incomparability is an equivalence relation, and exactly when
//! `1 ⊕ 2` does not embed. Restricting the antichains to at most two
//! elements additionally forbids `3̄`.

use thiserror::Error;

use crate::ordinal::two_bar_times_finite;
use crate::poset::{OrderMap, Poset, SumSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("order is not a linear sum of antichains of size at most two")]
    NotWidth2Decomposable,
}

/// Three distinct elements with `x ∥ y`, `y ∥ z` and `x`, `z` comparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncomparabilityTriple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Checks transitivity of the reflexive closure of incomparability and
/// returns the lexicographically least failing triple otherwise.
pub fn incomparability_is_equivalence(p: &Poset) -> Result<(), IncomparabilityTriple> {
    let n = p.size();
    for x in 0..n {
        for y in 0..n {
            if !p.incomparable(x, y) {
                continue;
            }
            for z in 0..n {
                if z != x && p.incomparable(y, z) && p.comparable(x, z) {
                    return Err(IncomparabilityTriple { x, y, z });
                }
            }
        }
    }
    Ok(())
}

/// `P ≅ Σ_{p∈C} A(p)`: the incomparability classes listed in the linear
/// order of their least elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Classes in increasing order; each class sorted by id.
    pub classes: Vec<Vec<usize>>,
    /// The least id of each class, in the same order as `classes`.
    pub representatives: Vec<usize>,
    /// Element id to position of its class.
    pub class_of: Vec<usize>,
}

impl Decomposition {
    /// The representatives as a linear suborder of the source.
    pub fn index(&self, p: &Poset) -> Poset {
        p.induced(&self.representatives)
    }

    /// The antichain summands, ready for `sum_over_index`.
    pub fn sum_spec(&self) -> SumSpec {
        SumSpec::new(
            Poset::chain(self.classes.len()),
            self.classes.iter().map(|c| Poset::antichain(c.len())).collect(),
        )
        .expect("one summand per class")
    }

    pub fn width(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForbiddenKind {
    OnePlusTwoEmbedding,
    Antichain3Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub map: OrderMap,
}

fn one_plus_two_witness(p: &Poset, t: IncomparabilityTriple) -> ForbiddenWitness {
    // the isolated point goes to y, the chain to x and z in order
    let (lo, hi) = if p.le(t.x, t.z) { (t.x, t.z) } else { (t.z, t.x) };
    let map = OrderMap::new(Poset::one_plus_two(), p.clone(), vec![lo, hi, t.y]).expect("valid images");
    debug_assert!(map.is_embedding());
    ForbiddenWitness {
        kind: ForbiddenKind::OnePlusTwoEmbedding,
        map,
    }
}

pub fn decompose(p: &Poset) -> Result<Decomposition, ForbiddenWitness> {
    if let Err(t) = incomparability_is_equivalence(p) {
        return Err(one_plus_two_witness(p, t));
    }
    let n = p.size();
    let mut class_id = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_id[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..n).filter(|&b| a == b || p.incomparable(a, b)).collect();
        for &m in &members {
            class_id[m] = classes.len();
        }
        classes.push(members);
    }
    // the representatives form a chain; sort classes along it
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (classes[i][0], classes[j][0]);
        if a == b {
            std::cmp::Ordering::Equal
        } else if p.le(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut position = vec![0; classes.len()];
    for (pos, &c) in order.iter().enumerate() {
        position[c] = pos;
    }
    let sorted: Vec<Vec<usize>> = order.iter().map(|&c| classes[c].clone()).collect();
    Ok(Decomposition {
        representatives: sorted.iter().map(|c| c[0]).collect(),
        class_of: class_id.iter().map(|&c| position[c]).collect(),
        classes: sorted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Width2Class {
    LinearSumOfPairs(Decomposition),
    Forbidden(ForbiddenWitness),
}

/// Decides whether `p` is a linear sum of antichains with at most two
/// elements, otherwise embeds `1 ⊕ 2` or `3̄`.
pub fn classify_width2(p: &Poset) -> Width2Class {
    match decompose(p) {
        Err(w) => Width2Class::Forbidden(w),
        Ok(d) => match d.classes.iter().find(|c| c.len() >= 3) {
            Some(c) => Width2Class::Forbidden(ForbiddenWitness {
                kind: ForbiddenKind::Antichain3Embedding,
                map: OrderMap::new(Poset::antichain(3), p.clone(), c[..3].to_vec()).expect("valid images"),
            }),
            None => Width2Class::LinearSumOfPairs(d),
        },
    }
}

/// Embeds a width-2 linear sum into `2̄·γ` with `γ` the number of classes:
/// each representative goes to `(rank, 0)`, its partner to `(rank, 1)`.
pub fn embed_into_two_times_gamma(p: &Poset) -> Result<OrderMap, DecompError> {
    let d = match classify_width2(p) {
        Width2Class::LinearSumOfPairs(d) => d,
        Width2Class::Forbidden(_) => return Err(DecompError::NotWidth2Decomposable),
    };
    let target = two_bar_times_finite(d.classes.len());
    let images = (0..p.size())
        .map(|a| {
            let rank = d.class_of[a];
            let layer = usize::from(d.representatives[rank] != a);
            2 * rank + layer
        })
        .collect();
    Ok(OrderMap::new(p.clone(), target, images).expect("images inside 2·γ"))
}
