use std::sync::Arc;

use super::fincat::{FinCat, Table};
use super::functor::FunctorMap;

/// `I_m`: objects `0..=m`, one arrow between neighbours, pointing
/// `k -> k+1` for even `k` and `k+1 -> k` for odd `k`.
pub fn interval_category(m: usize) -> FinCat {
    let obj_names: Vec<String> = (0..=m).map(|k| k.to_string()).collect();
    let mut mor_names: Vec<String> = (0..=m).map(|k| format!("id{k}")).collect();
    let mut dom: Vec<usize> = (0..=m).collect();
    let mut cod: Vec<usize> = (0..=m).collect();
    for k in 0..m {
        let (a, b) = if k % 2 == 0 { (k, k + 1) } else { (k + 1, k) };
        mor_names.push(format!("{a}>{b}"));
        dom.push(a);
        cod.push(b);
    }
    let n = mor_names.len();
    let mut compose = vec![None; n * n];
    for g in 0..n {
        for f in 0..n {
            if dom[g] != cod[f] {
                continue;
            }
            compose[g * n + f] = if g <= m {
                Some(f)
            } else if f <= m {
                Some(g)
            } else {
                None
            };
        }
    }
    FinCat::from_table(Table { obj_names, mor_names, dom, cod, identity: (0..=m).collect(), compose })
        .expect("interval category")
}

pub fn terminal_category() -> FinCat {
    interval_category(0)
}

/// Product category with componentwise composition. Ids are `(x,y)`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (nc, nd) = (c.n_morphisms(), d.n_morphisms());
    let (oc, od) = (c.n_objects(), d.n_objects());
    let obj_names = (0..oc * od).map(|i| format!("({},{})", c.obj_name(i / od), d.obj_name(i % od))).collect();
    let mor_names = (0..nc * nd).map(|i| format!("({},{})", c.mor_name(i / nd), d.mor_name(i % nd))).collect();
    let dom = (0..nc * nd).map(|i| c.dom(i / nd) * od + d.dom(i % nd)).collect();
    let cod = (0..nc * nd).map(|i| c.cod(i / nd) * od + d.cod(i % nd)).collect();
    let identity = (0..oc * od).map(|i| c.identity(i / od) * nd + d.identity(i % od)).collect();
    let n = nc * nd;
    let mut compose = vec![None; n * n];
    for g in 0..n {
        for f in 0..n {
            if let (Some(x), Some(y)) = (c.compose(g / nd, f / nd), d.compose(g % nd, f % nd)) {
                compose[g * n + f] = Some(x * nd + y);
            }
        }
    }
    FinCat::from_table(Table { obj_names, mor_names, dom, cod, identity, compose }).expect("product of categories")
}

pub fn product_with_interval(c: &FinCat, m: usize) -> FinCat {
    product(c, &interval_category(m))
}

/// The two projections out of `product(c, d)`.
pub fn projections(c: &Arc<FinCat>, d: &Arc<FinCat>, p: &Arc<FinCat>) -> (FunctorMap, FunctorMap) {
    let (od, nd) = (d.n_objects(), d.n_morphisms());
    let first = FunctorMap::new_unchecked(
        p.clone(),
        c.clone(),
        p.objects().map(|i| i / od).collect(),
        p.morphisms().map(|i| i / nd).collect(),
    );
    let second = FunctorMap::new_unchecked(
        p.clone(),
        d.clone(),
        p.objects().map(|i| i % od).collect(),
        p.morphisms().map(|i| i % nd).collect(),
    );
    (first, second)
}
