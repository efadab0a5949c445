use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let alg = ghostw_core::Algebra::build(2).unwrap();
    println!("build: {:?}", t0.elapsed());

    let t = Instant::now();
    let z = ghostw_core::centers::compute_center(&alg, 4);
    println!("center(4): dim {} in {:?}", z.dim(), t.elapsed());

    let t = Instant::now();
    let a = ghostw_core::centers::compute_anticenter(&alg, 4);
    println!("anticenter(4): dim {} in {:?}", a.dim(), t.elapsed());

    let t = Instant::now();
    let inv = ghostw_core::whittaker::finite_w_basis(&alg, 4);
    println!("finite_w(4): dim {} in {:?}", inv.len(), t.elapsed());

    let t = Instant::now();
    let report = ghostw_core::whittaker::verify_theorem_a(&alg, 4).unwrap();
    println!("verify_theorem_a(4): passed={} in {:?}", report.passed(), t.elapsed());
    for ass in &report.assertions {
        println!("  {:?} {} {:?}", ass.status, ass.name, ass.witness);
    }
    println!("dims: {:?}", report.dimensions);
}
