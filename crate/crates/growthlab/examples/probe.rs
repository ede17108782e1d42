use growthlab::*;
use std::time::Instant;

fn main() {
    let g = Group::heisenberg();
    let a = ElementSet::from_coords(
        &g,
        &[vec![0,0,0], vec![1,0,0], vec![-1,0,0], vec![0,1,0], vec![0,-1,0]],
    ).unwrap();
    let t = Instant::now();
    let big = power(&a, 6, Budget::default()).unwrap();
    let small = power(&a, 3, Budget::default()).unwrap();
    let limits = ExactLimits { max_candidates: 20_000, max_universe: 50_000, max_nodes: 3_000_000_000 };
    let res = min_cover(&big, &small, limits, Budget::default()).unwrap();
    println!("cov(A^6, A^3): l = {}, exact = {}, elapsed = {:?}", res.size(), res.exact, t.elapsed());
}
