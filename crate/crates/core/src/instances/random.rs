use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Instance;
use crate::category::{all_functors, product, Constraints, FinCat, FunctorMap, MorId, Table};
use crate::error::Result;
use crate::factorization::{ring_pairing, NaturalSystem, Pairing};
use crate::int::int;

/// Shape of a random instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomParams {
    pub objects: usize,
    /// generating arrows, each from a lower to a higher object
    pub edges: usize,
    /// attempted identifications of parallel paths
    pub relations: usize,
    /// when false, the category is multiplied by a cyclic group
    pub acyclic: bool,
    pub loop_order: usize,
    /// sheets of the covering; 0 for none
    pub sheets: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { objects: 4, edges: 5, relations: 2, acyclic: true, loop_order: 2, sheets: 0 }
    }
}

/// Path-count ceiling for the free category before quotienting.
const MAX_PATHS: usize = 200;

type Perm = Vec<usize>;

fn compose_perm(second: &Perm, first: &Perm) -> Perm {
    first.iter().map(|&i| second[i]).collect()
}

/// A quotient of the free category on a random DAG, optionally times a
/// cyclic group, with an optional covering built as the category of
/// elements of a random permutation action.
pub fn generate_random(seed: u64, params: &RandomParams) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_obj = params.objects.max(1);
    let sheets = params.sheets;

    // paths are (start object, arrows in order of application)
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_perm: Vec<Perm> = Vec::new();
    let mut paths: Vec<(usize, Vec<usize>)> = (0..n_obj).map(|a| (a, Vec::new())).collect();
    if n_obj > 1 {
        for _ in 0..params.edges {
            let a = rng.gen_range(0..n_obj - 1);
            let b = rng.gen_range(a + 1..n_obj);
            let e = edges.len();
            let extended = extend_paths(&paths, &edges, e, (a, b));
            if paths.len() + extended.len() > MAX_PATHS {
                continue;
            }
            edges.push((a, b));
            let mut p: Perm = (0..sheets).collect();
            p.shuffle(&mut rng);
            edge_perm.push(p);
            paths.extend(extended);
        }
    }
    paths.sort_by(|x, y| (x.1.len(), &x.1, x.0).cmp(&(y.1.len(), &y.1, y.0)));
    let end = |p: &(usize, Vec<usize>)| p.1.last().map_or(p.0, |&e| edges[e].1);
    let perm_of = |p: &(usize, Vec<usize>)| {
        p.1.iter().fold((0..sheets).collect::<Perm>(), |acc, &e| compose_perm(&edge_perm[e], &acc))
    };
    let index: HashMap<(usize, Vec<usize>), usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let np = paths.len();
    let perms: Vec<Perm> = paths.iter().map(perm_of).collect();

    // g∘f for composable path indices
    let mut concat: Vec<(usize, usize, usize)> = Vec::new();
    for (fi, f) in paths.iter().enumerate() {
        for (gi, g) in paths.iter().enumerate() {
            if g.0 == end(f) {
                let mut arrows = f.1.clone();
                arrows.extend(&g.1);
                concat.push((gi, fi, index[&(f.0, arrows)]));
            }
        }
    }

    let mut uf: Vec<usize> = (0..np).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let parallel: Vec<(usize, usize)> = (0..np)
        .flat_map(|i| (i + 1..np).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            !paths[i].1.is_empty()
                && paths[i].0 == paths[j].0
                && end(&paths[i]) == end(&paths[j])
                && perms[i] == perms[j]
        })
        .collect();
    for _ in 0..params.relations {
        if let Some(&(i, j)) = parallel.choose(&mut rng) {
            let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
            uf[ri.max(rj)] = ri.min(rj);
        }
    }
    // close under composition on both sides
    loop {
        let mut changed = false;
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for &(g, f, gf) in &concat {
            let key = (find(&mut uf, g), find(&mut uf, f));
            let r = find(&mut uf, gf);
            match table.get(&key) {
                Some(&s) if s != r => {
                    uf[r.max(s)] = r.min(s);
                    changed = true;
                }
                Some(_) => {}
                None => {
                    table.insert(key, r);
                }
            }
        }
        if !changed {
            break;
        }
    }

    // classes in order of their least representative, identities first
    let mut class_of = vec![usize::MAX; np];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..np {
        let r = find(&mut uf, i);
        if class_of[r] == usize::MAX {
            class_of[r] = reps.len();
            reps.push(i);
        }
        class_of[i] = class_of[r];
    }
    let nm = reps.len();
    let name = |i: usize| {
        let p = &paths[i];
        if p.1.is_empty() {
            format!("id_o{}", p.0)
        } else {
            p.1.iter().rev().map(|e| format!("a{e}")).collect::<Vec<_>>().join(".")
        }
    };
    let mut compose = vec![None; nm * nm];
    for &(g, f, gf) in &concat {
        compose[class_of[g] * nm + class_of[f]] = Some(class_of[gf]);
    }
    let table = Table {
        obj_names: (0..n_obj).map(|a| format!("o{a}")).collect(),
        mor_names: reps.iter().map(|&i| name(i)).collect(),
        dom: reps.iter().map(|&i| paths[i].0).collect(),
        cod: reps.iter().map(|&i| end(&paths[i])).collect(),
        identity: (0..n_obj).collect(),
        compose,
    };
    let dag = Arc::new(FinCat::from_table(table).expect("quotient of a free category"));
    let dag_perm: Vec<Perm> = reps.iter().map(|&i| perms[i].clone()).collect();

    let (category, action): (Arc<FinCat>, Vec<Perm>) = if params.acyclic {
        (dag, dag_perm)
    } else {
        let order = params.loop_order.max(2);
        let cyc = Arc::new(cyclic_group(order));
        let sigma = permutation_of_order_dividing(&mut rng, sheets, order);
        let powers: Vec<Perm> = (0..order)
            .scan((0..sheets).collect::<Perm>(), |acc, _| {
                let cur = acc.clone();
                *acc = compose_perm(&sigma, acc);
                Some(cur)
            })
            .collect();
        let prod = Arc::new(product(&dag, &cyc));
        // the product acts on pairs of sheets
        let action = prod
            .morphisms()
            .map(|m| {
                let (pa, pb) = (&dag_perm[m / order], &powers[m % order]);
                (0..sheets * sheets).map(|i| pa[i / sheets] * sheets + pb[i % sheets]).collect()
            })
            .collect();
        (prod, action)
    };
    let functor = (sheets > 0).then(|| {
        let n = action.first().map_or(sheets, Vec::len);
        category_of_elements(&category, n, &action)
    });
    let pairing = ring_pairing(category.clone(), 0);
    Instance {
        name: format!("random_{seed}"),
        category,
        system: Some(pairing.left().clone()),
        pairing: Some(pairing),
        functor,
        degree_cap: if params.acyclic { None } else { Some(3) },
    }
}

fn extend_paths(
    paths: &[(usize, Vec<usize>)],
    edges: &[(usize, usize)],
    e: usize,
    (a, b): (usize, usize),
) -> Vec<(usize, Vec<usize>)> {
    let end = |p: &(usize, Vec<usize>)| p.1.last().map_or(p.0, |&x| edges[x].1);
    let mut out = Vec::new();
    let into_a: Vec<&(usize, Vec<usize>)> = paths.iter().filter(|p| end(p) == a).collect();
    let from_b: Vec<&(usize, Vec<usize>)> = paths.iter().filter(|p| p.0 == b).collect();
    for p in &into_a {
        for q in &from_b {
            let mut arrows = p.1.clone();
            arrows.push(e);
            arrows.extend(&q.1);
            out.push((p.0, arrows));
        }
    }
    out
}

/// One object, arrows `g^0 = id_*, g^1, …`.
pub fn cyclic_group(order: usize) -> FinCat {
    let n = order.max(1);
    let mor_names = (0..n).map(|k| if k == 0 { "id_*".to_string() } else { format!("g{k}") }).collect();
    let mut compose = vec![None; n * n];
    for g in 0..n {
        for f in 0..n {
            compose[g * n + f] = Some((g + f) % n);
        }
    }
    FinCat::from_table(Table {
        obj_names: vec!["*".into()],
        mor_names,
        dom: vec![0; n],
        cod: vec![0; n],
        identity: vec![0],
        compose,
    })
    .expect("cyclic group")
}

fn permutation_of_order_dividing(rng: &mut ChaCha8Rng, n: usize, order: usize) -> Perm {
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let mut sigma: Perm = (0..n).collect();
    let mut rest = &points[..];
    while !rest.is_empty() {
        let len = if rest.len() >= order && rng.gen_bool(0.5) { order } else { 1 };
        let (cycle, tail) = rest.split_at(len);
        for k in 0..len {
            sigma[cycle[k]] = cycle[(k + 1) % len];
        }
        rest = tail;
    }
    sigma
}

/// The covering `∫F -> C` of a functor `F: C -> Set` with `F(x) = {0..n}`
/// and `F(m) = action[m]`. Objects of `∫F` are `x@i`, arrows `m@i: x@i -> y@F(m)(i)`.
pub fn category_of_elements(c: &Arc<FinCat>, n: usize, action: &[Perm]) -> FunctorMap {
    let nm = c.n_morphisms() * n;
    let mut compose = vec![None; nm * nm];
    for f in c.morphisms() {
        for g in c.out_of(c.cod(f)) {
            let gf = c.comp(g, f);
            for i in 0..n {
                compose[(g * n + action[f][i]) * nm + f * n + i] = Some(gf * n + i);
            }
        }
    }
    let table = Table {
        obj_names: (0..c.n_objects() * n).map(|x| format!("{}@{}", c.obj_name(x / n), x % n)).collect(),
        mor_names: (0..nm).map(|m| format!("{}@{}", c.mor_name(m / n), m % n)).collect(),
        dom: (0..nm).map(|m| c.dom(m / n) * n + m % n).collect(),
        cod: (0..nm).map(|m| c.cod(m / n) * n + action[m / n][m % n]).collect(),
        identity: (0..c.n_objects() * n).map(|x| c.identity(x / n) * n + x % n).collect(),
        compose,
    };
    let e = Arc::new(FinCat::from_table(table).expect("category of elements"));
    FunctorMap::new(e.clone(), c.clone(), e.objects().map(|x| x / n).collect(), e.morphisms().map(|m| m / n).collect())
        .expect("projection of a category of elements")
}

/// A functor `source -> target` drawn from the first `limit` found.
pub fn random_functor(seed: u64, source: &Arc<FinCat>, target: &Arc<FinCat>, limit: usize) -> Option<FunctorMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    let _ = crate::category::enumerate_functors(source, target, &Constraints::none(source), |f| {
        found.push(f.clone());
        if found.len() >= limit {
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    });
    found.choose(&mut rng).cloned()
}

/// `Z/m` (`Z` for `m = 0`) on every arrow, with every structure map along
/// `λ` multiplied by `ε(λ) = ±1` for a functor `ε` to the group of order two.
/// Ring multiplication stays natural for these systems.
pub fn character_system(c: &Arc<FinCat>, eps: &FunctorMap, m: u64) -> Result<(Arc<NaturalSystem>, Pairing)> {
    let g = if m == 0 { crate::abelian::AbGroup::free(1) } else { crate::abelian::AbGroup::cyclic(m) };
    let sign = |x: MorId| if eps.mor(x) == 0 { int(1) } else { int(-1) };
    let pres = g.presentation();
    let hom = |x: MorId| crate::abelian::AbHom::scalar(&pres, &sign(x));
    let d = Arc::new(NaturalSystem::from_tables(
        c.clone(),
        vec![g.clone(); c.n_morphisms()],
        |a, _| Some(hom(a)),
        |b, _| Some(hom(b)),
    )?);
    let value = if g.is_trivial() { vec![] } else { vec![int(1)] };
    let p = Pairing::from_fn(d.clone(), d.clone(), d.clone(), |_, _, _, _| value.clone())?;
    Ok((d, p))
}

/// Characters `c -> Z/2` (as functors to the one-object group).
pub fn characters(c: &Arc<FinCat>) -> Vec<FunctorMap> {
    let z2 = Arc::new(cyclic_group(2));
    all_functors(c, &z2, &Constraints::none(c))
}
