use std::time::Instant;
use cremona_core::verify;

fn main() {
    let t0 = Instant::now();
    let r = verify::verify_eisenstein().unwrap();
    println!("eisenstein: {} checks in {:?}", r.checks, t0.elapsed());
    let t0 = Instant::now();
    let r = verify::verify_arrangement().unwrap();
    println!("arrangement: {} checks in {:?}", r.checks, t0.elapsed());
    let t0 = Instant::now();
    let r = verify::verify_diagram(50).unwrap();
    println!("diagram(50): {} checks in {:?}", r.checks, t0.elapsed());
    let t0 = Instant::now();
    let r = verify::verify_polynomials(50).unwrap();
    println!("polynomials(7): {} checks in {:?}", r.checks, t0.elapsed());
    let t0 = Instant::now();
    let r = verify::verify_pencil(50).unwrap();
    println!("pencil(7): {} checks in {:?}", r.checks, t0.elapsed());
}
