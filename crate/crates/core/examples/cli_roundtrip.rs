//! Drive the command-line front end in-process: generate data, then fit it.
//!
//!     cargo run --example cli_roundtrip

fn main() {
    let dir = std::env::temp_dir().join("weak-dmd-cli-roundtrip");
    let dir_str = dir.to_string_lossy().into_owned();
    let (mut out, mut err) = (Vec::new(), Vec::new());

    let gen = ["weak-dmd", "gen", "--problem", "toy", "--grid", "nonuniform:200", "--seed", "7", "--output", &dir_str];
    let code = weak_dmd::cli::run_with(gen, &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));

    let data = dir.join("snapshots.csv");
    let data = data.to_string_lossy();
    let code = weak_dmd::cli::run_with(["weak-dmd", "eigs", data.as_ref()], &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    print!("{}", String::from_utf8_lossy(&out));
}
