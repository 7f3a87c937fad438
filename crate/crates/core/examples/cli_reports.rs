//! Driving the `lpa` command line in-process and reading its reports.

use leavitt::cli::run;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let f = |name: &str| format!("{data}/{name}");
    let calls: Vec<Vec<String>> = vec![
        vec!["validate".into(), f("line.json")],
        vec!["validate".into(), f("bad_dangling.json")],
        vec!["reduce".into(), f("loop.json"), "x.x*".into()],
        vec!["mul".into(), f("two_loops.json"), "e*".into(), "e.f".into()],
        vec![
            "basis".into(),
            f("line.json"),
            "--weight".into(),
            "2".into(),
        ],
        vec!["grade".into(), f("loop.json"), "x + x.x* + x*".into()],
        vec![
            "expect".into(),
            f("loop.json"),
            "--laurent".into(),
            "v.t + x.x*".into(),
        ],
        vec![
            "bratteli".into(),
            f("two_loops.json"),
            "--levels".into(),
            "3".into(),
        ],
        vec!["homcheck".into(), f("swap_bad.json")],
        vec!["certify".into(), f("disjoint_union.json")],
        vec![
            "certify".into(),
            f("coaction_no_witness.json"),
            "--levels".into(),
            "2".into(),
        ],
    ];
    for args in calls {
        let out = run(["lpa", "--format", "json"]
            .into_iter()
            .map(String::from)
            .chain(args.clone()));
        let r = out.report.expect("report");
        println!(
            "lpa {} -> exit {}, {}",
            args[0],
            out.code,
            r.message.as_deref().unwrap_or(&r.summary)
        );
    }

    let out = run([
        "lpa".to_string(),
        "reduce".into(),
        f("two_loops.json"),
        "e*.e.f".into(),
    ]);
    print!("\ntext report:\n{}", out.stdout);
}
