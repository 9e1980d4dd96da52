fn main() {
    let cfg = tdlab::htbuilder::BuildConfig { stages: 40, ..Default::default() };
    let r = tdlab::htbuilder::run(cfg).unwrap();
    for s in &r.stages {
        println!("stage {}: g={} u={} adm={} t={:?} added={:?} tried={}",
            s.index, s.g, s.u, s.admissible,
            s.t.as_ref().map(|t| t.to_string()),
            s.added_generators.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            s.candidates_tried);
    }
    println!("final gens: {:?}", r.final_generators.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    println!("final rank: {}, cosets in prefix: {}", r.final_subgroup_rank, r.action_prefix.coset_count());
    println!("verify: {:?}", tdlab::htbuilder::verify_report(&r));
}
