// Distribution files and the command line, run in-process.

use ctxlab::cli::run_args;
use ctxlab::generate;
use ctxlab::io::{dist_from_json, dist_to_json};

pub fn run_example() -> ctxlab::Result<()> {
    let p = generate::random(std::sync::Arc::new(ctxlab::scenario::Scenario::cycle(3)), 2, 4, 7)?;
    let text = dist_to_json(&p, None);
    let doc = dist_from_json(&text, None)?;
    assert_eq!(doc.to_json(), text);
    println!("random seed 7 on a triangle serializes to {} bytes and reads back identically", text.len());

    let dir = std::env::temp_dir().join(format!("ctxlab-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("chsh.json");
    let out = run_args(["ctxlab", "generate", "pr-box", "--cycle", "4", "--out", file.to_str().unwrap()]);
    assert_eq!(out.code, 0);

    let out = run_args(["ctxlab", "analyze", file.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).expect("JSON report");
    println!(
        "analyze: strongly contextual {}, witness circle {}",
        report["classification"]["flags"]["strongly_contextual"],
        report["classification"]["sc"]["pr_circle"]["circle"]
    );

    let out = run_args(["ctxlab", "collapse", file.to_str().unwrap(), "--edge", "e0"]);
    println!("collapsing a p- edge exits with {}", out.code);
    assert_eq!(out.code, 3);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
