use std::time::Instant;
fn main() {
    for name in ["aglf2_4", "m12", "s7", "a7", "m11"] {
        let g = tdlab::corpus::builtin(name).unwrap();
        let t0 = Instant::now();
        let order = g.order().unwrap();
        let t_order = t0.elapsed();
        let t0 = Instant::now();
        let normals = g.normal_subgroups(400_000).unwrap();
        let t_norm = t0.elapsed();
        let orders: Vec<u64> = normals.iter().map(|n| n.order().unwrap()).collect();
        let t0 = Instant::now();
        let prim = g.minimal_block_system().unwrap() == tdlab::Primitivity::Primitive;
        let maximal = g.stabilizer_is_maximal(1).unwrap();
        let t_rest = t0.elapsed();
        println!("{name}: order={order} ({t_order:?}), normal orders={orders:?} ({t_norm:?}), primitive={prim} stab-max={maximal} ({t_rest:?})");
        let t0 = Instant::now();
        let min = g.check_min_lemma(400_000).unwrap();
        println!("   min-lemma: {} applicable pairs, all_ok={} ({:?})", min.entries.len(), min.all_ok, t0.elapsed());
    }
}
