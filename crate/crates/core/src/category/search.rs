use std::collections::{HashMap, VecDeque};
use std::ops::ControlFlow;
use std::sync::Arc;

use super::fincat::{FinCat, MorId, ObjId};
use super::functor::{same_category, FunctorMap};
use crate::error::{Error, Result};

/// Allowed images for some objects and morphisms; `None` means unconstrained.
#[derive(Clone, Debug)]
pub struct Constraints {
    pub objects: Vec<Option<Vec<ObjId>>>,
    pub morphisms: Vec<Option<Vec<MorId>>>,
}

impl Constraints {
    pub fn none(src: &FinCat) -> Self {
        Constraints { objects: vec![None; src.n_objects()], morphisms: vec![None; src.n_morphisms()] }
    }

    pub fn fix_object(&mut self, a: ObjId, b: ObjId) -> &mut Self {
        self.objects[a] = Some(vec![b]);
        self
    }

    pub fn fix_morphism(&mut self, m: MorId, x: MorId) -> &mut Self {
        self.morphisms[m] = Some(vec![x]);
        self
    }

    pub fn allow_objects(&mut self, a: ObjId, bs: Vec<ObjId>) -> &mut Self {
        self.objects[a] = Some(bs);
        self
    }

    pub fn allow_morphisms(&mut self, m: MorId, xs: Vec<MorId>) -> &mut Self {
        self.morphisms[m] = Some(xs);
        self
    }
}

/// Non-identity morphisms that generate `c` under composition, chosen
/// greedily in index order.
pub fn generating_morphisms(c: &FinCat) -> Vec<MorId> {
    let n = c.n_morphisms();
    let mut have = vec![false; n];
    for a in c.objects() {
        have[c.identity(a)] = true;
    }
    let mut members: Vec<MorId> = c.objects().map(|a| c.identity(a)).collect();
    let mut gens = Vec::new();
    for m in c.non_identities() {
        if have[m] {
            continue;
        }
        gens.push(m);
        have[m] = true;
        members.push(m);
        let mut frontier = vec![m];
        while let Some(x) = frontier.pop() {
            let snapshot = members.clone();
            for y in snapshot {
                for h in [c.compose(x, y), c.compose(y, x)].into_iter().flatten() {
                    if !have[h] {
                        have[h] = true;
                        members.push(h);
                        frontier.push(h);
                    }
                }
            }
        }
    }
    gens
}

#[derive(Clone, Copy)]
enum Step {
    Obj(ObjId),
    Gen(MorId),
}

#[derive(Clone, Copy)]
enum Trail {
    Obj(ObjId),
    Mor(MorId),
}

struct Search<'a> {
    src: &'a FinCat,
    dst: &'a FinCat,
    cons: &'a Constraints,
    obj: Vec<Option<ObjId>>,
    mor: Vec<Option<MorId>>,
    trail: Vec<Trail>,
    steps: Vec<Step>,
}

impl Search<'_> {
    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::Obj(a) => self.obj[a] = None,
                Trail::Mor(m) => self.mor[m] = None,
            }
        }
    }

    fn allowed_mor(&self, m: MorId, x: MorId) -> bool {
        self.cons.morphisms[m].as_ref().is_none_or(|l| l.contains(&x))
    }

    /// Assigns `m -> x` and closes under composition with already assigned
    /// morphisms. On failure the caller undoes the trail.
    fn assign_mor(&mut self, m: MorId, x: MorId) -> bool {
        let mut work = VecDeque::new();
        if !self.set_mor(m, x, &mut work) {
            return false;
        }
        while let Some(y) = work.pop_front() {
            let fy = self.mor[y].unwrap();
            for f in self.src.into_obj(self.src.dom(y)).collect::<Vec<_>>() {
                if let Some(ff) = self.mor[f] {
                    let h = self.src.comp(y, f);
                    if !self.set_mor(h, self.dst.comp(fy, ff), &mut work) {
                        return false;
                    }
                }
            }
            for g in self.src.out_of(self.src.cod(y)).collect::<Vec<_>>() {
                if let Some(fg) = self.mor[g] {
                    let h = self.src.comp(g, y);
                    if !self.set_mor(h, self.dst.comp(fg, fy), &mut work) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn set_mor(&mut self, m: MorId, x: MorId, work: &mut VecDeque<MorId>) -> bool {
        if let Some(y) = self.mor[m] {
            return y == x;
        }
        if !self.allowed_mor(m, x) {
            return false;
        }
        debug_assert_eq!(self.obj[self.src.dom(m)], Some(self.dst.dom(x)));
        debug_assert_eq!(self.obj[self.src.cod(m)], Some(self.dst.cod(x)));
        self.mor[m] = Some(x);
        self.trail.push(Trail::Mor(m));
        work.push_back(m);
        true
    }

    fn go(&mut self, k: usize, visit: &mut dyn FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(&step) = self.steps.get(k) else {
            let obj: Vec<ObjId> = self.obj.iter().map(|o| o.expect("all objects assigned")).collect();
            let mor: Vec<MorId> = self.mor.iter().map(|m| m.expect("generators reach every morphism")).collect();
            return visit(&obj, &mor);
        };
        match step {
            Step::Obj(a) => {
                let cands: Vec<ObjId> = match &self.cons.objects[a] {
                    Some(l) => l.clone(),
                    None => self.dst.objects().collect(),
                };
                for b in cands {
                    let mark = self.trail.len();
                    self.obj[a] = Some(b);
                    self.trail.push(Trail::Obj(a));
                    if self.assign_mor(self.src.identity(a), self.dst.identity(b)) {
                        self.go(k + 1, visit)?;
                    }
                    self.undo(mark);
                }
                ControlFlow::Continue(())
            }
            Step::Gen(m) => {
                if self.mor[m].is_some() {
                    return self.go(k + 1, visit);
                }
                let (a, b) = (self.obj[self.src.dom(m)].unwrap(), self.obj[self.src.cod(m)].unwrap());
                let cands: Vec<MorId> = self.dst.hom(a, b).to_vec();
                for x in cands {
                    let mark = self.trail.len();
                    if self.assign_mor(m, x) {
                        self.go(k + 1, visit)?;
                    }
                    self.undo(mark);
                }
                ControlFlow::Continue(())
            }
        }
    }
}

fn plan(src: &FinCat) -> Vec<Step> {
    let gens = generating_morphisms(src);
    let mut placed = vec![false; src.n_objects()];
    let mut gen_done = vec![false; gens.len()];
    let mut steps = Vec::new();
    let mut neighbours: Vec<Vec<ObjId>> = vec![Vec::new(); src.n_objects()];
    for m in src.non_identities() {
        neighbours[src.dom(m)].push(src.cod(m));
        neighbours[src.cod(m)].push(src.dom(m));
    }
    for start in src.objects() {
        if placed[start] {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        placed[start] = true;
        while let Some(a) = queue.pop_front() {
            steps.push(Step::Obj(a));
            for (i, &g) in gens.iter().enumerate() {
                if !gen_done[i] && placed_step(&steps, src.dom(g)) && placed_step(&steps, src.cod(g)) {
                    gen_done[i] = true;
                    steps.push(Step::Gen(g));
                }
            }
            let mut next = neighbours[a].clone();
            next.sort_unstable();
            for b in next {
                if !placed[b] {
                    placed[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    steps
}

fn placed_step(steps: &[Step], a: ObjId) -> bool {
    steps.iter().any(|s| matches!(s, Step::Obj(x) if *x == a))
}

/// Calls `visit` on every functor `src -> dst` satisfying the constraints.
/// Stops early when `visit` breaks.
pub fn enumerate_functors(
    src: &Arc<FinCat>,
    dst: &Arc<FinCat>,
    cons: &Constraints,
    mut visit: impl FnMut(&FunctorMap) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut s = Search {
        src,
        dst,
        cons,
        obj: vec![None; src.n_objects()],
        mor: vec![None; src.n_morphisms()],
        trail: Vec::new(),
        steps: plan(src),
    };
    s.go(0, &mut |obj, mor| {
        let f = FunctorMap::new_unchecked(src.clone(), dst.clone(), obj.to_vec(), mor.to_vec());
        visit(&f)
    })
}

pub fn all_functors(src: &Arc<FinCat>, dst: &Arc<FinCat>, cons: &Constraints) -> Vec<FunctorMap> {
    let mut out = Vec::new();
    let _ = enumerate_functors(src, dst, cons, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    });
    out.sort_by(|a, b| (a.obj_map(), a.mor_map()).cmp(&(b.obj_map(), b.mor_map())));
    out
}

pub fn first_functor(src: &Arc<FinCat>, dst: &Arc<FinCat>, cons: &Constraints) -> Option<FunctorMap> {
    let mut found = None;
    let _ = enumerate_functors(src, dst, cons, |f| {
        found = Some(f.clone());
        ControlFlow::Break(())
    });
    found
}

/// A natural transformation `from => to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub from: FunctorMap,
    pub to: FunctorMap,
    /// component at each source object
    pub components: Vec<MorId>,
}

fn check_parallel(f: &FunctorMap, g: &FunctorMap) -> Result<()> {
    if same_category(f.source(), g.source()) && same_category(f.target(), g.target()) {
        Ok(())
    } else {
        Err(Error::MismatchedFunctors("functors are not parallel".into()))
    }
}

fn transformations(f: &FunctorMap, g: &FunctorMap, visit: &mut dyn FnMut(&[MorId]) -> ControlFlow<()>) {
    fn rec(
        a: usize,
        f: &FunctorMap,
        g: &FunctorMap,
        comp: &mut Vec<MorId>,
        visit: &mut dyn FnMut(&[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let src = f.source();
        let dst = f.target();
        if a == src.n_objects() {
            return visit(comp);
        }
        for &eta in dst.hom(f.obj(a), g.obj(a)) {
            comp[a] = eta;
            // squares whose ends are both decided
            let ok = src.morphisms().all(|m| {
                let (x, y) = (src.dom(m), src.cod(m));
                if x > a || y > a {
                    return true;
                }
                dst.comp(g.mor(m), comp[x]) == dst.comp(comp[y], f.mor(m))
            });
            if ok {
                rec(a + 1, f, g, comp, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    let mut comp = vec![usize::MAX; f.source().n_objects()];
    let _ = rec(0, f, g, &mut comp, visit);
}

pub fn natural_transformations(f: &FunctorMap, g: &FunctorMap) -> Result<Vec<NatTrans>> {
    check_parallel(f, g)?;
    let mut out = Vec::new();
    transformations(f, g, &mut |c| {
        out.push(NatTrans { from: f.clone(), to: g.clone(), components: c.to_vec() });
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn some_transformation(f: &FunctorMap, g: &FunctorMap) -> Option<Vec<MorId>> {
    let mut found = None;
    transformations(f, g, &mut |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Either-direction link between two functors.
fn link(f: &FunctorMap, g: &FunctorMap) -> Option<NatTrans> {
    if let Some(c) = some_transformation(f, g) {
        return Some(NatTrans { from: f.clone(), to: g.clone(), components: c });
    }
    some_transformation(g, f).map(|c| NatTrans { from: g.clone(), to: f.clone(), components: c })
}

/// A zigzag of natural transformations joining `functors[0]` to the last
/// functor; `links[i]` joins `functors[i]` and `functors[i + 1]` in one of
/// the two directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zigzag {
    pub functors: Vec<FunctorMap>,
    pub links: Vec<NatTrans>,
}

impl Zigzag {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

/// Functors joined to `f` by a single natural transformation, in either
/// direction, each with that transformation.
pub fn adjacent_functors(f: &FunctorMap) -> Vec<(FunctorMap, NatTrans)> {
    let mut out = Vec::new();
    for forward in [true, false] {
        let mut comp = vec![usize::MAX; f.source().n_objects()];
        adjacent(f, forward, 0, &mut comp, &mut out);
    }
    out
}

/// Whether some arrow `g(x) -> g(y)` can close the naturality square of `m`.
fn square_closes(f: &FunctorMap, forward: bool, comp: &[MorId], m: MorId) -> Option<Vec<MorId>> {
    let (src, dst) = (f.source(), f.target());
    let (x, y) = (src.dom(m), src.cod(m));
    let (ex, ey) = (comp[x], comp[y]);
    let (gx, gy) = if forward { (dst.cod(ex), dst.cod(ey)) } else { (dst.dom(ex), dst.dom(ey)) };
    let fits: Vec<MorId> = dst
        .hom(gx, gy)
        .iter()
        .copied()
        .filter(|&gm| {
            if forward {
                dst.comp(gm, ex) == dst.comp(ey, f.mor(m))
            } else {
                dst.comp(ey, gm) == dst.comp(f.mor(m), ex)
            }
        })
        .collect();
    (!fits.is_empty()).then_some(fits)
}

fn adjacent(f: &FunctorMap, forward: bool, a: usize, comp: &mut Vec<MorId>, out: &mut Vec<(FunctorMap, NatTrans)>) {
    let (src, dst) = (f.source(), f.target());
    if a == src.n_objects() {
        let mut cons = Constraints::none(src);
        for x in src.objects() {
            let g = if forward { dst.cod(comp[x]) } else { dst.dom(comp[x]) };
            cons.fix_object(x, g);
        }
        for m in src.morphisms() {
            match square_closes(f, forward, comp, m) {
                Some(fits) => cons.allow_morphisms(m, fits),
                None => return,
            };
        }
        let _ = enumerate_functors(src, dst, &cons, |g| {
            let (from, to) = if forward { (f.clone(), g.clone()) } else { (g.clone(), f.clone()) };
            out.push((g.clone(), NatTrans { from, to, components: comp.clone() }));
            ControlFlow::Continue(())
        });
        return;
    }
    let choices: Vec<MorId> = if forward { dst.out_of(f.obj(a)).collect() } else { dst.into_obj(f.obj(a)).collect() };
    for eta in choices {
        comp[a] = eta;
        let ok = src.morphisms().all(|m| {
            let (x, y) = (src.dom(m), src.cod(m));
            x > a || y > a || square_closes(f, forward, comp, m).is_some()
        });
        if ok {
            adjacent(f, forward, a + 1, comp, out);
        }
    }
    comp[a] = usize::MAX;
}

/// Breadth-first walk over the functors homotopic to `f`, starting at `f`.
/// `visit` gets each functor with a shortest zigzag from `f` to it and may
/// stop the walk.
pub fn walk_homotopy_class(
    f: &FunctorMap,
    mut visit: impl FnMut(&FunctorMap, &dyn Fn() -> Zigzag) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let mut nodes: Vec<FunctorMap> = vec![f.clone()];
    let mut prev: Vec<Option<(usize, NatTrans)>> = vec![None];
    let mut index: HashMap<Vec<MorId>, usize> = HashMap::from([(f.mor_map().to_vec(), 0)]);
    let mut next = 0;
    while next < nodes.len() {
        let i = next;
        next += 1;
        let path = || {
            let mut functors = vec![nodes[i].clone()];
            let mut links = Vec::new();
            let mut k = i;
            while let Some((p, l)) = &prev[k] {
                functors.push(nodes[*p].clone());
                links.push(l.clone());
                k = *p;
            }
            functors.reverse();
            links.reverse();
            Zigzag { functors, links }
        };
        visit(&nodes[i], &path)?;
        for (g, t) in adjacent_functors(&nodes[i]) {
            if !index.contains_key(g.mor_map()) {
                index.insert(g.mor_map().to_vec(), nodes.len());
                nodes.push(g);
                prev.push(Some((i, t)));
            }
        }
    }
    ControlFlow::Continue(())
}

/// Decides `f ≃ g` and returns a shortest zigzag from `f` to `g`.
pub fn homotopic(f: &FunctorMap, g: &FunctorMap) -> Result<Option<Zigzag>> {
    check_parallel(f, g)?;
    let mut found = None;
    let _ = walk_homotopy_class(f, |h, path| {
        if h.mor_map() == g.mor_map() && h.obj_map() == g.obj_map() {
            found = Some(path());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// All functors `src -> dst` with their homotopy classes.
#[derive(Clone, Debug)]
pub struct FunctorSpace {
    functors: Vec<FunctorMap>,
    index: HashMap<Vec<MorId>, usize>,
    component: Vec<usize>,
}

impl FunctorSpace {
    pub fn new(src: &Arc<FinCat>, dst: &Arc<FinCat>) -> Self {
        let functors = all_functors(src, dst, &Constraints::none(src));
        let index = functors.iter().enumerate().map(|(i, f)| (f.mor_map().to_vec(), i)).collect();
        let n = functors.len();
        let mut component = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if component[s] != usize::MAX {
                continue;
            }
            component[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if component[j] == usize::MAX && link(&functors[i], &functors[j]).is_some() {
                        component[j] = next;
                        queue.push_back(j);
                    }
                }
            }
            next += 1;
        }
        FunctorSpace { functors, index, component }
    }

    pub fn functors(&self) -> &[FunctorMap] {
        &self.functors
    }

    pub fn component_of(&self, f: &FunctorMap) -> Option<usize> {
        self.index.get(f.mor_map()).map(|&i| self.component[i])
    }

    pub fn n_components(&self) -> usize {
        self.component.iter().max().map_or(0, |m| m + 1)
    }
}
