// The endpoint iteration t -> t^2 - 2 and the fiber image intervals.

use su2gap::dynamics::{fiber_image_interval, fiber_image_numeric, iterate_phi_endpoint, DEFAULT_MAX_STEPS};

pub fn run_example() -> su2gap::Result<()> {
    for t0 in [1.9, 1.99, 1.999999, 2.0] {
        let r = iterate_phi_endpoint(t0, DEFAULT_MAX_STEPS);
        match r.steps_to_negative {
            Some(k) => println!("t0 = {t0}: negative after {k} steps ({:.6})", r.orbit[k]),
            None => println!("t0 = {t0}: not reached in {DEFAULT_MAX_STEPS} steps"),
        }
    }
    let worst = (0..4000)
        .filter_map(|k| iterate_phi_endpoint(-2.0 + k as f64 * 1e-3, DEFAULT_MAX_STEPS).steps_to_negative)
        .max()
        .unwrap_or(0);
    println!("slowest escape on the 1e-3 grid below 2: {worst} steps");

    for t in [-2.0, -1.0, 0.0, 1.0, 1.9] {
        let exact = fiber_image_interval(t);
        let grid = fiber_image_numeric(t, 2001);
        println!("t = {t:4}: [{:.6}, {:.6}]  grid [{:.6}, {:.6}]", exact.lo, exact.hi, grid.lo, grid.hi);
    }
    Ok(())
}

fn main() -> su2gap::Result<()> {
    run_example()
}
