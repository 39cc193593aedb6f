//! Maximal trees `T_α`, admissible mappings on them, image trees, and the
//! extraction of `B̃_α` brooms from well-founded images.

use std::collections::BTreeMap;

use crate::broom::BroomTerm;
use crate::error::{Error, Result};
use crate::family::{CanonicalTail, ForkRule, OmegaFamily, TailRule};
use crate::ordinal::{self, Ordinal};
use crate::seq::{FinSeq, InfSeq};
use crate::tree::{cl_tr, AnnotatedTree};

/// Truncation of `T_α = {r} ∪ ⋃ n ⌢ T_{π_α(n)}`: indices below `breadth`,
/// nodes of length at most `depth`, every internal node marked.
pub fn talpha_truncate(alpha: &Ordinal, breadth: usize, depth: usize) -> AnnotatedTree {
    let mut out = AnnotatedTree::new();
    out.depth = Some(depth);
    grow(alpha, &FinSeq::root(), breadth, depth, &mut out);
    out
}

fn grow(alpha: &Ordinal, base: &FinSeq, breadth: usize, depth: usize, out: &mut AnnotatedTree) {
    if alpha.is_zero() {
        out.insert(base);
        return;
    }
    out.mark(base);
    if base.len() >= depth {
        return;
    }
    for n in 0..breadth as u64 {
        let beta = ordinal::pi(alpha, n).expect("alpha >= 1");
        grow(&beta, &base.child(n), breadth, depth, out);
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MapRule {
    /// `φ(t) = σ | (t(0) + … + t(|t|-1))`.
    CanonicalFromSigma(InfSeq),
    /// An explicit table, defined on the `(breadth, depth)` truncation.
    Tabulated {
        table: BTreeMap<FinSeq, FinSeq>,
        breadth: usize,
        depth: usize,
    },
}

/// A map from `T_domain` to finite sequences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleMap {
    pub domain: Ordinal,
    pub rule: MapRule,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Condition {
    /// `s ⊏ t ⟹ φ(s) ⊏ φ(t)`.
    Monotone = 1,
    /// `|φ(t)| = t(0) + … + t(|t|-1)`.
    Length = 2,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub condition: Condition,
    pub node: FinSeq,
    pub image: FinSeq,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleReport {
    pub checked: usize,
    pub violation: Option<Violation>,
}

impl AdmissibleReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl AdmissibleMap {
    pub fn apply(&self, t: &FinSeq) -> Result<FinSeq> {
        match &self.rule {
            MapRule::CanonicalFromSigma(sigma) => Ok(sigma.restrict(t.entry_sum() as usize)),
            MapRule::Tabulated { table, .. } => table
                .get(t)
                .cloned()
                .ok_or_else(|| Error::Coverage { node: t.clone() }),
        }
    }

    fn ensure_bounds(&self, breadth: usize, depth: usize) -> Result<()> {
        if let MapRule::Tabulated {
            breadth: bb,
            depth: bd,
            ..
        } = &self.rule
        {
            if breadth > *bb || depth > *bd {
                return Err(Error::Bounds {
                    breadth,
                    depth,
                    bound_breadth: *bb,
                    bound_depth: *bd,
                });
            }
        }
        Ok(())
    }

    /// The table of `self` on the `(breadth, depth)` truncation.
    pub fn tabulate(&self, breadth: usize, depth: usize) -> Result<AdmissibleMap> {
        self.ensure_bounds(breadth, depth)?;
        let tree = talpha_truncate(&self.domain, breadth, depth);
        let table = tree
            .nodes()
            .iter()
            .map(|t| Ok((t.clone(), self.apply(t)?)))
            .collect::<Result<_>>()?;
        Ok(AdmissibleMap {
            domain: self.domain.clone(),
            rule: MapRule::Tabulated {
                table,
                breadth,
                depth,
            },
        })
    }
}

pub fn canonical_admissible(sigma: &InfSeq, alpha: &Ordinal) -> AdmissibleMap {
    AdmissibleMap {
        domain: alpha.clone(),
        rule: MapRule::CanonicalFromSigma(sigma.clone()),
    }
}

/// `block(0) = ()`, `block(n) = (n, 0, …, 0)` of length `n`.
fn block(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut v = vec![0; n as usize];
    v[0] = n;
    v
}

/// The admissible table `φ(t) = block(t(0)) ⌢ block(t(1)) ⌢ …`, whose image
/// contains a copy of `B̃_alpha`.
pub fn block_admissible(alpha: &Ordinal, breadth: usize, depth: usize) -> AdmissibleMap {
    let tree = talpha_truncate(alpha, breadth, depth);
    let table = tree
        .nodes()
        .iter()
        .map(|t| {
            let image: Vec<u64> = t.entries().iter().flat_map(|&n| block(n)).collect();
            (t.clone(), FinSeq::new(image))
        })
        .collect();
    AdmissibleMap {
        domain: alpha.clone(),
        rule: MapRule::Tabulated {
            table,
            breadth,
            depth,
        },
    }
}

/// Checks both admissibility conditions on every node of the truncation,
/// in breadth-first order; the length condition is tested first at each
/// node.
pub fn check_admissible(phi: &AdmissibleMap, breadth: usize, depth: usize) -> Result<AdmissibleReport> {
    phi.ensure_bounds(breadth, depth)?;
    let tree = talpha_truncate(&phi.domain, breadth, depth);
    let mut images: BTreeMap<&FinSeq, FinSeq> = BTreeMap::new();
    let mut checked = 0;
    for t in tree.bfs() {
        let image = phi.apply(t)?;
        checked += 1;
        let sum = t.entry_sum() as usize;
        if image.len() != sum {
            return Ok(AdmissibleReport {
                checked,
                violation: Some(Violation {
                    condition: Condition::Length,
                    node: t.clone(),
                    detail: format!("|φ{t}| = {} but the entry sum is {sum}", image.len()),
                    image,
                }),
            });
        }
        if let Some(p) = t.parent() {
            let parent_image = &images[&p];
            if !image.extends(parent_image) {
                return Ok(AdmissibleReport {
                    checked,
                    violation: Some(Violation {
                        condition: Condition::Monotone,
                        node: t.clone(),
                        detail: format!("φ{t} = {image} does not extend φ{p} = {parent_image}"),
                        image,
                    }),
                });
            }
        }
        images.insert(t, image);
    }
    Ok(AdmissibleReport {
        checked,
        violation: None,
    })
}

/// `cl_Tr(φ(T))` on the truncation. A node is marked when it is a branch
/// point of the images of the children of some marked node of `T_α`.
pub fn image_tree(phi: &AdmissibleMap, breadth: usize, depth: usize) -> Result<AnnotatedTree> {
    phi.ensure_bounds(breadth, depth)?;
    let tree = talpha_truncate(&phi.domain, breadth, depth);
    let mut images = BTreeMap::new();
    for t in tree.nodes() {
        images.insert(t.clone(), phi.apply(t)?);
    }
    let mut marks = Vec::new();
    for t in tree.omega() {
        let kids: Vec<FinSeq> = tree
            .children(t)
            .iter()
            .map(|c| images[c].clone())
            .collect();
        let local = AnnotatedTree::from_parts(kids, [], None);
        marks.extend(
            local
                .nodes()
                .iter()
                .filter(|v| local.children(v).len() >= 2)
                .cloned(),
        );
    }
    let nodes: Vec<FinSeq> = images.into_values().collect();
    let max = cl_tr(&nodes).iter().map(FinSeq::len).max();
    Ok(AnnotatedTree::from_parts(nodes, marks, max))
}

/// Searches `image` for a `B̃_alpha` broom, treating a node with at least
/// `threshold` successors as infinitely branching.
///
/// Only the `threshold` certified bristles at every level are read from
/// the image; the rest of each family repeats them (successor levels) or is
/// canonical (limit levels). `Ok(None)` means the truncation is too small.
pub fn extract_btilde(image: &AnnotatedTree, alpha: &Ordinal, threshold: usize) -> Result<Option<BroomTerm>> {
    if image.is_empty() {
        return Ok(None);
    }
    if !alpha.is_zero() {
        if let Some(frontier) = image.depth {
            for s in image.level(frontier) {
                if !s.prefixes().any(|p| image.is_marked(&p)) {
                    return Err(Error::NotWellFounded(s.clone()));
                }
            }
        }
    }
    Ok(extract_at(image, &FinSeq::root(), alpha, threshold.max(1)))
}

/// A `B̃_alpha` term `B` with `u ⌢ B` inside `image`.
fn extract_at(image: &AnnotatedTree, u: &FinSeq, alpha: &Ordinal, k: usize) -> Option<BroomTerm> {
    if alpha.is_zero() {
        let mut v = u.clone();
        while let Some(c) = image.children(&v).into_iter().next() {
            v = c;
        }
        return Some(BroomTerm::Singleton(v.suffix_from(u.len())));
    }
    let pred = alpha.predecessor();
    let mut queue = std::collections::VecDeque::from([u.clone()]);
    while let Some(v) = queue.pop_front() {
        let children = image.children(&v);
        if children.len() >= k {
            let mut found: Vec<(u64, BroomTerm)> = Vec::with_capacity(k);
            for c in &children {
                let level = match &pred {
                    Some(p) => p.clone(),
                    None => ordinal::pi(alpha, found.len() as u64).expect("limit"),
                };
                if let Some(b) = extract_at(image, c, &level, k) {
                    found.push((c.last().expect("child"), b));
                    if found.len() == k {
                        break;
                    }
                }
            }
            if found.len() == k {
                let next_fork = found.iter().map(|(f, _)| *f).max().expect("k >= 1") + 1;
                let tail = match pred {
                    Some(_) => TailRule::Cycle(found.iter().map(|(_, b)| b.clone()).collect()),
                    None => TailRule::Canonical(CanonicalTail::new(alpha.clone())),
                };
                return Some(BroomTerm::Broom {
                    handle: v.suffix_from(u.len()),
                    family: OmegaFamily {
                        head: found,
                        forks: ForkRule::affine(1, next_fork),
                        tail,
                    },
                });
            }
        }
        queue.extend(children);
    }
    None
}

/// Every element of the breadth truncation of `b` lies in `image`.
pub fn contained_in(b: &BroomTerm, image: &AnnotatedTree, breadth: usize) -> bool {
    b.visit_elements(breadth, usize::MAX, &mut |s| image.contains(&s))
}
