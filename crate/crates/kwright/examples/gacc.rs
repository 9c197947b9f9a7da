use kwright::wright::*;
use num_complex::Complex64;
fn r(x: f64) -> Complex64 { Complex64::new(x, 0.0) }
fn main() {
    let p = WrightParams::new(1.0, vec![ParamPair::new(r(-2.2), 1.0)], vec![]).unwrap();
    for n in [5usize, 50, 500, 5000, 9999] {
        let s = eval_kwright_partial(&p, r(1.0), n).unwrap();
        println!("partial n={n}: {}", s.re);
    }
    let coeffs = series_coefficients(&p, 10).unwrap();
    for (n, c) in coeffs.iter().enumerate() { println!("term {n}: {}", c.re); }
}
