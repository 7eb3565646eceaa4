use pointforge::cubic::CubicInput;
use pointforge::rational::rat_int;
use std::time::Instant;

fn main() {
    let input = CubicInput::new(rat_int(0), rat_int(0), rat_int(2)).unwrap();
    let t = Instant::now();
    let n0 = input.n_poly().eval(&rat_int(1));
    println!("n eval: {:?} -> {}", t.elapsed(), n0);
    let t = Instant::now();
    let curve = input.curve();
    println!("curve: {:?}", t.elapsed());
    // forge WITHOUT probe: replicate manually
    let t = Instant::now();
    let sf = pointforge::squarefree::rational_squarefree_part(&n0).unwrap();
    println!("squarefree: {:?} delta={}", t.elapsed(), sf.delta);
    let t = Instant::now();
    let forged = input.forge(&rat_int(1), 2);
    println!("forge w/ probe B=2: {:?} ok={}", t.elapsed(), forged.is_ok());
    for b in [4, 6, 8, 10, 12] {
        let t = Instant::now();
        let f = input.forge(&rat_int(1), b).unwrap();
        println!("forge w/ probe B={}: {:?} verdict={:?}", b, t.elapsed(), f.torsion_verdict);
        let _ = curve;
        let _ = f;
    }
}
