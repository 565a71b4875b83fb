//! Verified ring homomorphisms and the distinguished structure of a group
//! ring: ε, ε_H, Δ(G), Δ(G,H), Ĥ, I[G], and the quotient isomorphisms.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::elements::{Elem, ElementSet};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::ideal::{self, ideal_closure, ideal_from_members, Ideal, Side};
use crate::ring::{group_ring, FiniteRing, GroupRingContext};
use crate::span::AdditiveSpan;

/// An element-level map between finite rings, verified to preserve 1, +
/// and · at construction.
#[derive(Debug, Clone)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<Elem>,
}

/// The first law a candidate map breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomFailure {
    pub law: &'static str,
    pub at: (Elem, Elem),
}

impl RingHom {
    /// Tabulates `f` on the source and verifies it. Additivity is checked on
    /// every (x, t) with t an additive generator, multiplicativity on pairs of
    /// additive generators; together these give the laws on all pairs.
    pub fn new(
        source: Arc<FiniteRing>,
        target: Arc<FiniteRing>,
        f: impl Fn(Elem) -> Elem + Sync,
        caps: &Caps,
    ) -> Result<RingHom> {
        caps.check_deadline()?;
        let map: Vec<Elem> = (0..source.size() as Elem).into_par_iter().map(&f).collect();
        if let Some(&bad) = map.iter().find(|&&y| y as usize >= target.size()) {
            return Err(Error::ElementOutOfRange(bad as usize));
        }
        let hom = RingHom { source, target, map };
        if let Some(fail) = hom.verify() {
            return Err(Error::InvalidDescriptor(format!(
                "map is not a ring homomorphism: {} fails at {:?}",
                fail.law, fail.at
            )));
        }
        Ok(hom)
    }

    pub fn verify(&self) -> Option<HomFailure> {
        let (s, t) = (&self.source, &self.target);
        if self.map[s.one() as usize] != t.one() {
            return Some(HomFailure {
                law: "f(1) = 1",
                at: (s.one(), s.one()),
            });
        }
        let gens = s.additive_gens();
        let add_fail = (0..s.size() as Elem).into_par_iter().find_map_first(|x| {
            gens.iter()
                .find(|&&g| self.apply(s.add(x, g)) != t.add(self.apply(x), self.apply(g)))
                .map(|&g| (x, g))
        });
        if let Some(at) = add_fail {
            return Some(HomFailure {
                law: "f(x + y) = f(x) + f(y)",
                at,
            });
        }
        for &a in gens {
            for &b in gens {
                if self.apply(s.mul(a, b)) != t.mul(self.apply(a), self.apply(b)) {
                    return Some(HomFailure {
                        law: "f(xy) = f(x)f(y)",
                        at: (a, b),
                    });
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    pub fn kernel_members(&self) -> ElementSet {
        ElementSet::from_iter_in(
            self.source.size(),
            self.map
                .iter()
                .enumerate()
                .filter(|(_, &y)| y == 0)
                .map(|(x, _)| x as Elem),
        )
    }

    /// The kernel as a two-sided ideal of the source.
    pub fn kernel(&self, caps: &Caps) -> Result<Ideal> {
        ideal_from_members(&self.source, &self.kernel_members(), caps)
    }

    pub fn image(&self) -> ElementSet {
        ElementSet::from_iter_in(self.target.size(), self.map.iter().copied())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count() == self.target.size()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_members().count() == 1
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.size() == self.target.size() && self.is_injective()
    }
}

/// ε: A[G] → A, the coefficient sum.
pub fn augmentation(ctx: &GroupRingContext, caps: &Caps) -> Result<RingHom> {
    let base = &ctx.base;
    RingHom::new(
        ctx.ring.clone(),
        base.clone(),
        |x| ctx.decode(x).into_iter().fold(0, |acc, c| base.add(acc, c)),
        caps,
    )
}

/// The elements 1 − h for h ∈ H, h ≠ 1.
pub fn one_minus(ctx: &GroupRingContext, h: &Subgroup) -> Vec<Elem> {
    let one = ctx.ring.one();
    h.members
        .iter()
        .filter(|&&g| g != 0)
        .map(|&g| ctx.ring.sub(one, ctx.group_element(g)))
        .collect()
}

/// Δ(G) when `h` is None, else Δ(G,H), built from the generators {1 − h}
/// and checked against the kernel of ε (respectively ε_H).
pub fn augmentation_ideal(ctx: &GroupRingContext, h: Option<&Subgroup>, caps: &Caps) -> Result<Ideal> {
    let whole = ctx.group.whole();
    let h = h.unwrap_or(&whole);
    if !ctx.group.is_normal(h) {
        return Err(Error::NotNormal);
    }
    let ideal = ideal_closure(&ctx.ring, &one_minus(ctx, h), caps)?;
    let kernel = if h.order() == ctx.group.order() {
        augmentation(ctx, caps)?.kernel_members()
    } else {
        eps_h(ctx, h, caps)?.hom.kernel_members()
    };
    if &kernel != ideal.members() {
        return Err(Error::InvalidIdeal(
            "generator form of the augmentation ideal disagrees with the kernel".into(),
        ));
    }
    Ok(ideal)
}

/// ε_H: A[G] → A[G/H] together with the target group ring.
#[derive(Debug, Clone)]
pub struct RelativeAugmentation {
    pub quotient: GroupRingContext,
    /// g ↦ gH on group element ids.
    pub proj: Vec<Elem>,
    pub hom: RingHom,
}

pub fn eps_h(ctx: &GroupRingContext, h: &Subgroup, caps: &Caps) -> Result<RelativeAugmentation> {
    let (q, proj) = ctx.group.quotient(h)?;
    let target = group_ring(ctx.base.clone(), Arc::new(q), caps)?;
    let quotient = target.group_ring_context().expect("group ring");
    let base = &ctx.base;
    let hom = RingHom::new(
        ctx.ring.clone(),
        target.clone(),
        |x| {
            let mut v = vec![0; quotient.group.order()];
            for (g, c) in ctx.decode(x).into_iter().enumerate() {
                let k = proj[g] as usize;
                v[k] = base.add(v[k], c);
            }
            quotient.encode(&v)
        },
        caps,
    )?;
    Ok(RelativeAugmentation {
        quotient,
        proj,
        hom,
    })
}

/// Ĥ = Σ_{h∈H} h.
pub fn h_hat(ctx: &GroupRingContext, h: &Subgroup) -> Elem {
    ctx.sum_over(ctx.base.one(), &h.members)
}

/// Whether x commutes with every element (checked on additive generators).
pub fn is_central(ring: &FiniteRing, x: Elem) -> bool {
    ring.additive_gens()
        .iter()
        .all(|&t| ring.mul(x, t) == ring.mul(t, x))
}

/// A[H] for a subgroup H, realized as a separate group ring with its
/// inclusion into A[G] by coefficient-support placement.
#[derive(Debug, Clone)]
pub struct SubgroupRing {
    pub ctx: GroupRingContext,
    pub inclusion: RingHom,
}

impl SubgroupRing {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ctx.ring
    }

    /// Pulls an ideal J of A[G] back to J ∩ A[H].
    pub fn restrict(&self, j: &Ideal, caps: &Caps) -> Result<Ideal> {
        j.belongs_to(self.inclusion.target())?;
        let members = ElementSet::from_iter_in(
            self.ring().size(),
            self.ring().elements().filter(|&x| j.contains(self.inclusion.apply(x))),
        );
        ideal_from_members(self.ring(), &members, caps)
    }

    /// The image of a subset of A[H] inside A[G].
    pub fn push(&self, xs: &[Elem]) -> Vec<Elem> {
        xs.iter().map(|&x| self.inclusion.apply(x)).collect()
    }
}

pub fn subgroup_ring(ctx: &GroupRingContext, h: &Subgroup, caps: &Caps) -> Result<SubgroupRing> {
    let (table, embedding) = ctx.group.subgroup_as_group(h)?;
    let ring = group_ring(ctx.base.clone(), Arc::new(table), caps)?;
    let sub = ring.group_ring_context().expect("group ring");
    let inclusion = RingHom::new(
        ring,
        ctx.ring.clone(),
        |x| {
            let mut v = vec![0; ctx.group.order()];
            for (i, c) in sub.decode(x).into_iter().enumerate() {
                v[embedding[i] as usize] = c;
            }
            ctx.encode(&v)
        },
        caps,
    )?;
    Ok(SubgroupRing {
        ctx: sub,
        inclusion,
    })
}

/// Additive span of {t·x} (side = Left) or {x·t} (side = Right) for t
/// ranging over additive generators of the ring and x over `xs`.
pub fn one_sided_span(ring: &FiniteRing, xs: &[Elem], side: Side) -> ElementSet {
    let mut span = AdditiveSpan::new(ring);
    for &x in xs {
        for &t in ring.additive_gens() {
            span.insert(match side {
                Side::Left => ring.mul(t, x),
                Side::Right => ring.mul(x, t),
            });
        }
    }
    span.into_parts().0
}

/// The four descriptions of Δ(G,H) and the induced isomorphism.
#[derive(Debug, Clone, Serialize)]
pub struct RelativeAugmentationReport {
    pub kernel_size: usize,
    pub generated_size: usize,
    pub span_size: usize,
    pub extended_size: usize,
    pub all_equal: bool,
    pub index_matches: bool,
    pub isomorphism_verified: bool,
}

impl RelativeAugmentationReport {
    pub fn holds(&self) -> bool {
        self.all_equal && self.index_matches && self.isomorphism_verified
    }
}

/// ker ε_H, ⟨{1 − h}⟩, span{a·g(1 − h)}, and A[G]·Δ(H) (with Δ(H) computed
/// in A[H]), compared as sets; then |A[G]|/|Δ(G,H)| = |A[G/H]| and the
/// induced map A[G]/Δ(G,H) → A[G/H] is checked to be an isomorphism.
pub fn relative_augmentation_report(
    ctx: &GroupRingContext,
    h: &Subgroup,
    caps: &Caps,
) -> Result<RelativeAugmentationReport> {
    if !ctx.group.is_normal(h) {
        return Err(Error::NotNormal);
    }
    let ring = &ctx.ring;
    let eps = eps_h(ctx, h, caps)?;
    let kernel = eps.hom.kernel_members();
    let gens = one_minus(ctx, h);
    let generated = ideal_closure(ring, &gens, caps)?;
    let span = one_sided_span(ring, &gens, Side::Left);

    let sub = subgroup_ring(ctx, h, caps)?;
    let delta_h = ideal_closure(
        sub.ring(),
        &one_minus(&sub.ctx, &sub.ctx.group.whole()),
        caps,
    )?;
    let extended = one_sided_span(ring, &sub.push(delta_h.basis()), Side::Left);

    let all_equal = &kernel == generated.members() && kernel == span && kernel == extended;
    let index_matches = ring.size() / kernel.count() == eps.quotient.ring.size();

    let isomorphism_verified = if generated.is_whole() {
        false
    } else {
        let q = ideal::quotient_ring(ring, &generated, caps)?;
        let (_, reps, _) = q.quotient_parts().expect("quotient");
        let reps = reps.to_vec();
        let induced = RingHom::new(q.clone(), eps.quotient.ring.clone(), |c| eps.hom.apply(reps[c as usize]), caps)?;
        induced.is_isomorphism()
    };
    Ok(RelativeAugmentationReport {
        kernel_size: kernel.count(),
        generated_size: generated.size(),
        span_size: span.count(),
        extended_size: extended.count(),
        all_equal,
        index_matches,
        isomorphism_verified,
    })
}

/// I[G] for an ideal I of A, with the verified isomorphism
/// A[G]/I[G] → (A/I)[G].
#[derive(Debug, Clone)]
pub struct ExtendedIdeal {
    pub ideal: Ideal,
    /// Present when I ≠ A.
    pub isomorphism: Option<RingHom>,
}

pub fn extend_ideal(ctx: &GroupRingContext, i: &Ideal, caps: &Caps) -> Result<ExtendedIdeal> {
    i.belongs_to(&ctx.base)?;
    let ring = &ctx.ring;
    let gens: Vec<Elem> = i.basis().iter().map(|&a| ctx.embed_base(a)).collect();
    let ideal = ideal_closure(ring, &gens, caps)?;
    let coefficientwise = ElementSet::from_iter_in(
        ring.size(),
        ring.elements()
            .filter(|&x| ctx.decode(x).iter().all(|&c| i.contains(c))),
    );
    if &coefficientwise != ideal.members() {
        return Err(Error::InvalidIdeal(
            "I[G] differs from the coefficientwise description".into(),
        ));
    }
    if i.is_whole() {
        return Ok(ExtendedIdeal {
            ideal,
            isomorphism: None,
        });
    }
    let base_q = ideal::quotient_ring(&ctx.base, i, caps)?;
    let (_, _, base_proj) = base_q.quotient_parts().expect("quotient");
    let base_proj = base_proj.to_vec();
    let target = group_ring(base_q.clone(), ctx.group.clone(), caps)?;
    let tctx = target.group_ring_context().expect("group ring");
    let q = ideal::quotient_ring(ring, &ideal, caps)?;
    let (_, reps, _) = q.quotient_parts().expect("quotient");
    let reps = reps.to_vec();
    let iso = RingHom::new(
        q.clone(),
        target,
        |c| {
            let v: Vec<Elem> = ctx
                .decode(reps[c as usize])
                .into_iter()
                .map(|a| base_proj[a as usize])
                .collect();
            tctx.encode(&v)
        },
        caps,
    )?;
    if !iso.is_isomorphism() {
        return Err(Error::InvalidIdeal(
            "induced map A[G]/I[G] -> (A/I)[G] is not bijective".into(),
        ));
    }
    Ok(ExtendedIdeal {
        ideal,
        isomorphism: Some(iso),
    })
}

/// For H central and I, J ideals of A[H]: whether (IJ)A[G] = (IA[G])(JA[G]).
/// Each side is built as the right A[G]-span of images, which is a
/// two-sided ideal because H is central.
pub fn central_product_identity(
    ctx: &GroupRingContext,
    sub: &SubgroupRing,
    h: &Subgroup,
    i: &Ideal,
    j: &Ideal,
    caps: &Caps,
) -> Result<bool> {
    if !ctx.group.is_central(h) {
        return Err(Error::NotCentral);
    }
    let ring = &ctx.ring;
    let ij = ideal::product(sub.ring(), i, j)?;
    let extend = |x: &Ideal| -> Result<Ideal> {
        let members = one_sided_span(ring, &sub.push(x.basis()), Side::Right);
        ideal_from_members(ring, &members, caps)
    };
    let lhs = extend(&ij)?;
    let rhs = ideal::product(ring, &extend(i)?, &extend(j)?)?;
    Ok(lhs == rhs)
}

/// Convenience: the group ring context of a ring, or an error.
pub fn require_group_ring(ring: &Arc<FiniteRing>) -> Result<GroupRingContext> {
    ring.group_ring_context().ok_or_else(|| Error::NotApplicable {
        check: "group ring".into(),
        reason: format!("{} is not a group ring", ring.provenance()),
    })
}

/// Normal subgroups of G, trivial one excluded.
pub fn nontrivial_normal(g: &GroupTable, caps: &Caps) -> Result<Vec<Subgroup>> {
    Ok(g.normal_subgroups(caps)?
        .into_iter()
        .filter(|s| !s.is_trivial())
        .collect())
}
