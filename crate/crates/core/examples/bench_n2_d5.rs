use std::time::Instant;

fn main() {
    let alg = ghostw_core::Algebra::build(2).unwrap();
    let t = Instant::now();
    let report = ghostw_core::whittaker::verify_theorem_a(&alg, 5).unwrap();
    println!("verify_theorem_a(5): passed={} in {:?}", report.passed(), t.elapsed());
    println!("dims: {:?}", report.dimensions);
}
