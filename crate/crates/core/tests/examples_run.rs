use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: &[&str] = &[
    "spectral_model",
    "sample_paths",
    "mean_estimation",
    "gauss_markov",
    "learning_curve",
    "confidence_known",
    "confidence_unknown",
    "subspace_test",
    "regression",
    "distributions",
    "monte_carlo",
    "frame_subspace",
];

fn built(name: &str) -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let path = exe.parent()?.parent()?.join("examples").join(name);
    path.exists().then_some(path)
}

#[test]
fn every_example_runs() {
    for name in EXAMPLES {
        let out = match built(name) {
            Some(path) => Command::new(path).output(),
            None => Command::new(std::env::var("CARGO").unwrap_or_else(|_| "cargo".into()))
                .args(["run", "-q", "--example", name])
                .current_dir(env!("CARGO_MANIFEST_DIR"))
                .output(),
        }
        .expect("example starts");
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
