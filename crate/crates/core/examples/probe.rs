use anticomplete::budget::Budget;
use anticomplete::generators::*;
use anticomplete::search::*;
use std::time::Instant;

fn main() {
    for s in [5usize, 7] {
        let inst = gen_interrupted_constellation(s).unwrap();
        let g = &inst.graph;
        let sp = (s - 1) / 2;
        let t = Instant::now();
        let mut b = Budget::new(2_000_000_000);
        let m = find_bipartite_minor_model(g, sp, sp, true, true, &mut b).unwrap();
        println!("c({s}) n={}: ({sp},{sp})-induced model: {} in {:?} ({} steps)",
            g.n(), m.is_some(), t.elapsed(), b.spent());
        let t = Instant::now();
        let mut b = Budget::new(2_000_000_000);
        let pair = find_anticomplete_pair(g, 3, &mut b);
        match pair {
            Ok(p) => println!("c({s}): pair@3 = {} in {:?} ({} steps)", p.is_some(), t.elapsed(), b.spent()),
            Err(e) => println!("c({s}): pair@3 ERR {e} in {:?}", t.elapsed()),
        }
    }
}
