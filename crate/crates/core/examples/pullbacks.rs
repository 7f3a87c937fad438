//! Pullback squares checked degreewise at finite levels, and the hypothesis
//! certificate for their C*-completions.

use leavitt::diagram::{certify_cstar_pullback, pullback_at_level, square_commutes};
use leavitt::files::load_diagram;
use leavitt::grading::Action;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    for file in [
        "disjoint_union.json",
        "coaction.json",
        "coaction_zero_r.json",
        "coaction_sign.json",
        "coaction_no_witness.json",
    ] {
        let dg = load_diagram(format!("{data}/{file}").as_ref()).unwrap();
        println!("{file}: commutes {}", square_commutes(&dg).unwrap());
        for n in 0..=3 {
            let lv = pullback_at_level(&dg, n, None).unwrap();
            println!(
                "  n={n}: fiber {:>4} image {:>4} injective {} pass {}",
                lv.fiber_dim, lv.image_dim, lv.injective, lv.pass
            );
        }
        let cert = certify_cstar_pullback(&dg, 4, Action::Gauge).unwrap();
        for h in &cert.hypotheses {
            println!("  {} {:?}: {}", h.id, h.status, h.detail);
        }
        println!("  => {}", cert.verdict.summary());
    }
}
