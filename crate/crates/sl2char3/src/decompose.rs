//! The structural decomposition engine.
//!
//! Starting from explicit matrices, [`decompose`] finds the Krull–Schmidt
//! summands by splitting along generalized eigenspaces of endomorphisms, then
//! describes each summand by its socle series. No closed-form tables are
//! consulted.
//!
//! Simple submodules are found linearly. A simple module on which `X+^3` and
//! `X-^3` are nilpotent is generated by a highest weight vector `v` of
//! weight `r` with `X-^m v = 0`, where `m = r + 1` for `r` in `{0,1,2}` and
//! `m = 3` otherwise. When one of the cubes is invertible, the commuting
//! operators `X+X-`, `X+^3`, `X-^3` on one weight space determine the
//! module, and every joint eigenvector spins to a simple submodule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::{recover_params, CanonError, CanonicalClass};
use crate::descriptor::{Action, Descriptor};
use crate::field::{Fe, Field};
use crate::linalg::{hom_space_masked, LinalgError, Mat, Subspace, Vector};
use crate::poly;
use crate::sl2::Rep;

pub use crate::descriptor::descriptor_equal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    /// Some eigenvalue lies outside the field. `degree` is the degree of the
    /// extension (over the current field) in which it lives.
    #[error("field too small: an extension of degree {degree} is needed")]
    FieldTooSmall { degree: u32 },
    #[error("cannot spin the zero vector")]
    ZeroVector,
    #[error("no splitting endomorphism found for a decomposable module")]
    NoSplit,
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Result of [`decompose_detailed`]: the descriptor together with the
/// summand subspaces it was read from.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub descriptor: Descriptor,
    /// The module actually decomposed: the input, or the input rewritten in a
    /// weight basis when its `H` was not diagonal.
    pub module: Rep,
    /// Indecomposable summands as subspaces of `module`, with descriptors.
    pub summands: Vec<(Subspace, Descriptor)>,
}

/// Smallest submodule containing `v`.
pub fn spin(r: &Rep, v: &[Fe]) -> Result<Subspace, DecomposeError> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(DecomposeError::ZeroVector);
    }
    Ok(r.spin(&[v.to_vec()]))
}

/// The module `r / s`, in the coordinates that are not pivots of `s`.
pub fn quotient_rep(r: &Rep, s: &Subspace) -> Result<Rep, DecomposeError> {
    Ok(r.quotient(s)?)
}

/// Decomposes `r` and returns the normalized descriptor.
pub fn decompose(r: &Rep) -> Result<Descriptor, DecomposeError> {
    Ok(decompose_detailed(r)?.descriptor)
}

pub fn decompose_detailed(r: &Rep) -> Result<Decomposition, DecomposeError> {
    let module = to_weight_basis(r)?;
    let mut pieces = Vec::new();
    split_recursive(&module, &Subspace::full(module.field(), module.dim()), &mut pieces)?;
    let mut summands = Vec::new();
    for space in pieces {
        let sub = module.restrict(&space)?;
        summands.push((space, describe_indecomposable(&sub)?));
    }
    let descriptor = if summands.len() == 1 {
        summands[0].1.clone()
    } else {
        Descriptor::Sum(summands.iter().map(|(_, d)| d.clone()).collect())
    };
    Ok(Decomposition {
        descriptor: descriptor.normalize(),
        module,
        summands,
    })
}

/// Rewrites `r` in a basis of weight vectors, so that `H` is diagonal.
pub fn to_weight_basis(r: &Rep) -> Result<Rep, DecomposeError> {
    if r.has_diagonal_h() {
        return Ok(r.clone());
    }
    let f = r.field();
    let spaces = r.h.eigenspaces();
    let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
    if total != r.dim() {
        return Err(DecomposeError::FieldTooSmall {
            degree: poly::splitting_degree(f, &r.h.charpoly()),
        });
    }
    let cols: Vec<Vector> = spaces.iter().flat_map(|(_, s)| s.basis().to_vec()).collect();
    let s = Mat::from_cols(f, r.dim(), &cols);
    Ok(r.conjugate(&s).expect("weight vectors form a basis"))
}

fn weights(r: &Rep) -> Vec<Fe> {
    (0..r.dim()).map(|i| r.h[(i, i)]).collect()
}

/// Basis of the endomorphism algebra. Endomorphisms commute with the
/// diagonal `H`, so only entries between equal weights can be nonzero.
pub fn endomorphisms(r: &Rep) -> Vec<Mat> {
    let w = weights(r);
    let gens = [&r.xminus, &r.xplus];
    hom_space_masked(r.field(), &gens, &gens, |i, j| w[i] == w[j])
}

enum Split {
    Parts(Subspace, Subspace),
    Indecomposable,
}

/// Splits `r` (the restriction of the ambient module to `space`) into
/// indecomposable summands, appending them as ambient subspaces.
fn split_recursive(ambient: &Rep, space: &Subspace, out: &mut Vec<Subspace>) -> Result<(), DecomposeError> {
    let r = ambient.restrict(space)?;
    match find_split(&r)? {
        Split::Indecomposable => out.push(space.clone()),
        Split::Parts(a, b) => {
            for part in [a, b] {
                let vs: Vec<Vector> = part.basis().iter().map(|c| space.combine(c)).collect();
                split_recursive(ambient, &Subspace::span(ambient.field(), ambient.dim(), &vs), out)?;
            }
        }
    }
    Ok(())
}

const RANDOM_CANDIDATES: usize = 64;

fn find_split(r: &Rep) -> Result<Split, DecomposeError> {
    let n = r.dim();
    if n <= 1 {
        return Ok(Split::Indecomposable);
    }
    let f = r.field();
    let basis = endomorphisms(r);
    let mut missing_degree = None;
    let mut try_candidate = |e: &Mat| -> Option<Split> {
        let cp = e.charpoly();
        let roots = f.poly_roots(&cp).expect("charpoly is monic");
        if roots.roots.is_empty() {
            missing_degree.get_or_insert_with(|| poly::splitting_degree(f, &cp));
            return None;
        }
        for &(lambda, _) in &roots.roots {
            let g = e.sub(&Mat::scalar(f, n, lambda)).pow(n as u32);
            let rank = g.rank();
            if rank > 0 && rank < n {
                return Some(Split::Parts(g.image(), g.kernel()));
            }
        }
        if !roots.splits() {
            missing_degree.get_or_insert_with(|| poly::splitting_degree(f, &cp));
        }
        None
    };
    for e in &basis {
        if let Some(s) = try_candidate(e) {
            return Ok(s);
        }
    }
    if is_local(f, n, &basis) {
        return Ok(Split::Indecomposable);
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if let Some(s) = try_candidate(&basis[i].add(&basis[j])) {
                return Ok(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    let elems: Vec<Fe> = f.elements().collect();
    for _ in 0..RANDOM_CANDIDATES {
        let e = basis.iter().fold(Mat::zeros(f, n, n), |acc, b| {
            acc.add(&b.scale(elems[rng.gen_range(0..elems.len())]))
        });
        if let Some(s) = try_candidate(&e) {
            return Ok(s);
        }
    }
    match missing_degree {
        Some(degree) => Err(DecomposeError::FieldTooSmall { degree }),
        None => Err(DecomposeError::NoSplit),
    }
}

/// Whether the algebra spanned by `basis` is local: every basis element is a
/// scalar plus a nilpotent, and the nilpotent parts span a subalgebra. A
/// subalgebra spanned by nilpotent elements is nilpotent, so it is the
/// radical and the quotient is the ground field.
fn is_local(f: &Field, n: usize, basis: &[Mat]) -> bool {
    let mut nil = Vec::new();
    for b in basis {
        let roots = f.poly_roots(&b.charpoly()).expect("charpoly is monic");
        if roots.roots.len() != 1 || !roots.splits() {
            return false;
        }
        let m = b.sub(&Mat::scalar(f, n, roots.roots[0].0));
        if !m.pow(n as u32).is_zero() {
            return false;
        }
        nil.push(m);
    }
    let flat: Vec<Vector> = nil.iter().map(|m| m.entries().to_vec()).collect();
    let span = Subspace::span(f, n * n, &flat);
    nil.iter()
        .all(|a| nil.iter().all(|b| span.contains(a.mul(b).entries())))
}

/// A space of vectors each of which generates a simple submodule isomorphic
/// to `class`; its dimension is the multiplicity of `class` in the socle.
#[derive(Clone, Debug)]
pub struct SimpleGenerators {
    pub class: CanonicalClass,
    pub space: Subspace,
}

fn prime_weight(f: &Field, w: Fe) -> Option<u8> {
    f.prime_value(w)
}

/// Generating spaces for every isomorphism type of simple submodule.
pub fn simple_generators(r: &Rep) -> Result<Vec<SimpleGenerators>, DecomposeError> {
    let f = r.field();
    let n = r.dim();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let spaces = to_weight_spaces(r)?;
    let kp = r.xplus.kernel();
    // Highest weight vectors of the modules with nilpotent cubes.
    for (w, space) in &spaces {
        let m = prime_weight(f, *w).map_or(3, |p| p as u32 + 1);
        let cand = space.intersect(&kp).intersect(&r.xminus.pow(m).kernel());
        if cand.is_zero() {
            continue;
        }
        let class = match prime_weight(f, *w) {
            Some(0) => CanonicalClass::One,
            Some(1) => CanonicalClass::Two,
            Some(_) => CanonicalClass::three(f),
            None => {
                let s = r.spin(&cand.basis()[..1]);
                recover_params(&r.restrict(&s)?)?
            }
        };
        out.push(SimpleGenerators { class, space: cand });
    }
    // Joint eigenvectors on one weight per coset of the prime field.
    let xm3 = r.xminus.pow(3);
    let xp3 = r.xplus.pow(3);
    let xpxm = r.xplus.mul(&r.xminus);
    let mut seen_cosets: Vec<Fe> = Vec::new();
    for (w, space) in &spaces {
        let coset = [f.zero(), f.one(), f.from_i64(2)]
            .iter()
            .map(|&k| f.add(*w, k))
            .min()
            .unwrap();
        if seen_cosets.contains(&coset) {
            continue;
        }
        seen_cosets.push(coset);
        for (eigen, joint) in joint_eigenspaces(&[&xm3, &xp3, &xpxm], space)? {
            if eigen[0].is_zero() && eigen[1].is_zero() {
                continue;
            }
            let s = r.spin(&joint.basis()[..1]);
            let class = recover_params(&r.restrict(&s)?)?;
            out.push(SimpleGenerators { class, space: joint });
        }
    }
    Ok(out)
}

fn to_weight_spaces(r: &Rep) -> Result<Vec<(Fe, Subspace)>, DecomposeError> {
    let spaces = r.h.eigenspaces();
    let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
    if total != r.dim() {
        return Err(DecomposeError::FieldTooSmall {
            degree: poly::splitting_degree(r.field(), &r.h.charpoly()),
        });
    }
    Ok(spaces)
}

/// Common eigenspaces inside `space` of commuting operators preserving it,
/// keyed by the eigenvalue sequence.
fn joint_eigenspaces(ops: &[&Mat], space: &Subspace) -> Result<Vec<(Vec<Fe>, Subspace)>, DecomposeError> {
    let Some((first, rest)) = ops.split_first() else {
        return Ok(vec![(Vec::new(), space.clone())]);
    };
    let f = space.field().clone();
    let local = first.restrict(space)?;
    let cp = local.charpoly();
    let roots = f.poly_roots(&cp).expect("charpoly is monic");
    if !roots.splits() {
        return Err(DecomposeError::FieldTooSmall {
            degree: poly::splitting_degree(&f, &cp),
        });
    }
    let mut out = Vec::new();
    for &(lambda, _) in &roots.roots {
        let ker = local.sub(&Mat::scalar(&f, local.rows(), lambda)).kernel();
        let vs: Vec<Vector> = ker.basis().iter().map(|c| space.combine(c)).collect();
        let eig = Subspace::span(&f, space.ambient(), &vs);
        for (mut tail, sub) in joint_eigenspaces(rest, &eig)? {
            tail.insert(0, lambda);
            out.push((tail, sub));
        }
    }
    Ok(out)
}

/// The socle: the sum of all simple submodules.
pub fn socle(r: &Rep) -> Result<Subspace, DecomposeError> {
    let gens = simple_generators(r)?;
    let vs: Vec<Vector> = gens.iter().flat_map(|g| g.space.basis().to_vec()).collect();
    Ok(r.spin(&vs))
}

/// Simple constituents of the socle, with multiplicity, sorted.
pub fn socle_classes(r: &Rep) -> Result<Vec<CanonicalClass>, DecomposeError> {
    let mut out: Vec<CanonicalClass> = simple_generators(r)?
        .iter()
        .flat_map(|g| std::iter::repeat_n(g.class, g.space.dim()))
        .collect();
    out.sort();
    Ok(out)
}

/// One step of the socle series.
#[derive(Clone, Debug)]
pub struct Layer {
    /// `S_k`, the k-th socle as a subspace of the module.
    pub space: Subspace,
    /// Simple constituents of `S_k / S_(k-1)`.
    pub classes: Vec<CanonicalClass>,
}

/// The socle series `0 < S_1 < ... < S_t = V`, bottom first.
pub fn socle_series(r: &Rep) -> Result<Vec<Layer>, DecomposeError> {
    let f = r.field();
    let n = r.dim();
    let mut layers: Vec<Layer> = Vec::new();
    let mut current = Subspace::zero(f, n);
    while current.dim() < n {
        let q = r.quotient(&current)?;
        let soc = socle(&q)?;
        let classes = socle_classes(&q)?;
        let free = current.non_pivots();
        let lifted: Vec<Vector> = soc
            .basis()
            .iter()
            .map(|v| {
                let mut u = vec![f.zero(); n];
                for (&c, &x) in free.iter().zip(v) {
                    u[c] = x;
                }
                u
            })
            .collect();
        current = current.sum(&Subspace::span(f, n, &lifted));
        layers.push(Layer {
            space: current.clone(),
            classes,
        });
    }
    Ok(layers)
}

/// Jordan–Hölder factors read off the socle series, sorted.
pub fn composition_factors(r: &Rep) -> Result<Vec<CanonicalClass>, DecomposeError> {
    let mut out: Vec<CanonicalClass> = socle_series(r)?.into_iter().flat_map(|l| l.classes).collect();
    out.sort();
    Ok(out)
}

fn layer_descriptor(classes: &[CanonicalClass]) -> Descriptor {
    if classes.len() == 1 {
        Descriptor::Leaf(classes[0])
    } else {
        Descriptor::Sum(classes.iter().map(|&c| Descriptor::Leaf(c)).collect())
    }
}

fn describe_indecomposable(r: &Rep) -> Result<Descriptor, DecomposeError> {
    let series = socle_series(r)?;
    if series.len() == 1 {
        let classes = &series[0].classes;
        if classes.len() == 1 {
            return Ok(Descriptor::Leaf(classes[0]));
        }
        // A semisimple indecomposable with several constituents only
        // happens when the field is too small to separate them.
        return Err(DecomposeError::NoSplit);
    }
    let small = series
        .iter()
        .flat_map(|l| &l.classes)
        .all(|c| matches!(c, CanonicalClass::One | CanonicalClass::Two));
    if small {
        return glue_graph(r, &series);
    }
    let mut desc = layer_descriptor(&series[0].classes);
    for layer in &series[1..] {
        desc = Descriptor::semi(layer_descriptor(&layer.classes), desc);
    }
    Ok(desc)
}

/// A chosen simple node of a layer: its highest weight representative.
#[derive(Clone, Debug)]
struct Node {
    class: CanonicalClass,
    hw: Vector,
}

/// Solves `x = sum c_i vs[i]` for the coefficients, if possible.
fn solve_combination(f: &Field, vs: &[Vector], x: &[Fe]) -> Option<Vector> {
    let n = x.len();
    if vs.is_empty() {
        return x.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let mut cols = vs.to_vec();
    cols.push(x.iter().map(|&c| f.neg(c)).collect());
    let ker = Mat::from_cols(f, n, &cols).kernel();
    // A kernel vector with last coordinate 1 gives the coefficients.
    let last = vs.len();
    let v = ker.basis().iter().find(|v| !v[last].is_zero())?;
    let inv = f.inv(v[last]).ok()?;
    Some(v[..last].iter().map(|&c| f.mul(c, inv)).collect())
}

/// Glue diagram of an indecomposable whose constituents are all `1` and `2`.
///
/// Nodes are highest weight representatives in each socle layer: weight 0
/// for `1`, weight 1 for `2`. A top node `u` of type `r` glues via `X+` to
/// the components of `X+ u` in the layer below, and via `X-` to those of
/// `X-^(r+1) u`. Representatives are chosen top-down, preferring images of
/// the nodes above, then vectors with no outgoing glue.
fn glue_graph(r: &Rep, series: &[Layer]) -> Result<Descriptor, DecomposeError> {
    let f = r.field();
    let n = r.dim();
    let w0 = f.zero();
    let w1 = f.one();
    let w2 = f.from_i64(2);
    let weight_space = |w: Fe| -> Subspace {
        let vs: Vec<Vector> = (0..n)
            .filter(|&i| r.h[(i, i)] == w)
            .map(|i| crate::linalg::unit(f, n, i))
            .collect();
        Subspace::span(f, n, &vs)
    };
    let (v0, v1) = (weight_space(w0), weight_space(w1));
    let zero = Subspace::zero(f, n);
    let below = |k: usize| -> &Subspace {
        if k == 0 {
            &zero
        } else {
            &series[k - 1].space
        }
    };

    // Images of a node under the two glue actions, tagged by target weight.
    let images = |node: &Node| -> [(Action, Vector); 2] {
        match node.class {
            CanonicalClass::One => [
                (Action::XPlus, r.xplus.apply(&node.hw)),
                (Action::XMinus, r.xminus.apply(&node.hw)),
            ],
            _ => [
                (Action::XPlus, r.xplus.apply(&node.hw)),
                (Action::XMinus, r.xminus.apply(&r.xminus.apply(&node.hw))),
            ],
        }
    };

    let t = series.len();
    let mut layers: Vec<Vec<Node>> = vec![Vec::new(); t];
    for k in (0..t).rev() {
        let upper: Vec<Node> = if k + 1 < t { layers[k + 1].clone() } else { Vec::new() };
        let lower = below(k);
        let mut nodes = Vec::new();
        for (class, wspace) in [(CanonicalClass::One, &v0), (CanonicalClass::Two, &v1)] {
            let here = series[k].space.intersect(wspace);
            let reps: Vec<Vector> = here.basis().iter().map(|v| lower.reduce(v)).collect();
            let layer_space = Subspace::span(f, n, &reps);
            if layer_space.is_zero() {
                continue;
            }
            let mut candidates: Vec<Vector> = Vec::new();
            for node in &upper {
                for (action, img) in images(node) {
                    let cand = match (class, node.class, action) {
                        (CanonicalClass::One, CanonicalClass::Two, _) => img,
                        (CanonicalClass::Two, CanonicalClass::One, Action::XMinus) => img,
                        (CanonicalClass::Two, CanonicalClass::One, Action::XPlus) => r.xplus.apply(&img),
                        _ => continue,
                    };
                    candidates.push(cand);
                }
            }
            if k > 0 {
                let deeper = below(k - 1);
                let outgoing = |action: Action| -> Subspace {
                    let cols: Vec<Vector> = layer_space
                        .basis()
                        .iter()
                        .map(|v| {
                            let node = Node { class, hw: v.clone() };
                            let img = images(&node).into_iter().find(|(a, _)| *a == action).unwrap().1;
                            deeper.reduce(&img)
                        })
                        .collect();
                    Mat::from_cols(f, n, &cols).kernel()
                };
                let kp = outgoing(Action::XPlus);
                let km = outgoing(Action::XMinus);
                for ker in [kp.intersect(&km), kp, km] {
                    candidates.extend(ker.basis().iter().map(|c| layer_space.combine(c)));
                }
            }
            candidates.extend(layer_space.basis().iter().cloned());
            let mut chosen: Vec<Vector> = Vec::new();
            for cand in candidates {
                if chosen.len() == layer_space.dim() {
                    break;
                }
                let red = lower.reduce(&cand);
                if red.iter().all(|x| x.is_zero()) || !layer_space.contains(&red) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial.push(red.clone());
                if Subspace::span(f, n, &trial).dim() == trial.len() {
                    chosen.push(red);
                }
            }
            nodes.extend(chosen.into_iter().map(|hw| Node { class, hw }));
        }
        layers[k] = nodes;
    }

    // Global node order: top layer first.
    let mut all: Vec<(usize, Node)> = Vec::new();
    for k in (0..t).rev() {
        for node in &layers[k] {
            all.push((k, node.clone()));
        }
    }
    let mut edges = Vec::new();
    for (i, (k, node)) in all.iter().enumerate() {
        if *k == 0 {
            continue;
        }
        let lower = below(*k - 1);
        for (action, img) in images(node) {
            // Targets in layer k-1 at the weight of the image.
            let targets: Vec<(usize, Vector)> = all
                .iter()
                .enumerate()
                .filter(|(_, (kk, _))| *kk == *k - 1)
                .filter_map(|(j, (_, tn))| match (node.class, tn.class, action) {
                    (CanonicalClass::Two, CanonicalClass::One, _) => Some((j, tn.hw.clone())),
                    (CanonicalClass::One, CanonicalClass::Two, Action::XMinus) => Some((j, tn.hw.clone())),
                    (CanonicalClass::One, CanonicalClass::Two, Action::XPlus) => Some((j, r.xminus.apply(&tn.hw))),
                    _ => None,
                })
                .collect();
            let vs: Vec<Vector> = targets.iter().map(|(_, v)| lower.reduce(v)).collect();
            let coeffs = solve_combination(f, &vs, &lower.reduce(&img)).ok_or(DecomposeError::NoSplit)?;
            for ((j, _), c) in targets.iter().zip(coeffs) {
                if !c.is_zero() {
                    edges.push((i, *j, action));
                }
            }
        }
    }
    let nodes: Vec<CanonicalClass> = all.iter().map(|(_, nd)| nd.class).collect();
    let _ = w2;
    Ok(Descriptor::glue(nodes, &edges).normalize())
}
