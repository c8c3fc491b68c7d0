use crate::error::{GrcError, Result};
use crate::group::{Group, Subgroup};

/// Groups above this order are not searched for a Frobenius complement.
pub const FROBENIUS_ORDER_LIMIT: usize = 1000;

#[derive(Clone, Debug)]
pub struct FrobeniusStructure {
    pub kernel: Subgroup,
    pub complement: Subgroup,
}

fn is_complement(g: &Group, h: &Subgroup) -> bool {
    g.elements()
        .filter(|&x| !h.contains(x))
        .all(|x| h.members().iter().skip(1).all(|&y| !h.contains(g.conj(y, x))))
}

/// Finds H with H ∩ xHx⁻¹ = 1 for all x ∉ H and returns the kernel
/// N = G ∖ ⋃ x(H∖1)x⁻¹ ∪ {1} with H. A complement satisfies |H|² < |G|,
/// which bounds the search.
pub fn frobenius_structure(g: &Group) -> Result<Option<FrobeniusStructure>> {
    if g.order() > FROBENIUS_ORDER_LIMIT {
        return Err(GrcError::SizeCap {
            order: g.order(),
            cap: FROBENIUS_ORDER_LIMIT,
        });
    }
    for h in g.subgroups() {
        if h.order() == 1 || h.order() * h.order() >= g.order() || h.is_normal() {
            continue;
        }
        if !is_complement(g, &h) {
            continue;
        }
        let mut in_conjugate = vec![false; g.order()];
        for x in g.elements() {
            for &y in &h.members()[1..] {
                in_conjugate[g.conj(y, x) as usize] = true;
            }
        }
        let members: Vec<u32> = g.elements().filter(|&x| !in_conjugate[x as usize]).collect();
        let kernel = g.subgroup_generated(&members);
        if kernel.order() == members.len() && kernel.is_normal() && kernel.order() * h.order() == g.order() {
            return Ok(Some(FrobeniusStructure {
                kernel,
                complement: h,
            }));
        }
    }
    Ok(None)
}
