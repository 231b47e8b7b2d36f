// Driving an analysis from a JSON configuration, as the binary does.

use se2_frames::cli::{cmd_analyze, cmd_count, Output};
use se2_frames::config::parse_config;

pub fn run_example() -> se2_frames::Result<String> {
    let cfg = parse_config(
        r#"{"p": 0.5, "p_sigma": 0.3183098861837907, "rho": 1.0, "num_angles": 7,
            "grid": 24, "repetitions": 3, "seed": 11}"#,
    )?;
    let out = Output::new(std::env::temp_dir().join("se2-frames-config-run"), false)?;
    print!("{}", cmd_count(&cfg, &out)?);
    let analysis = cmd_analyze(&cfg, &out)?;
    print!("{}", analysis.summary);
    println!("fields written to {}", out.dir.display());
    Ok(std::fs::read_to_string(out.dir.join("field.csv"))?)
}

fn main() -> se2_frames::Result<()> {
    run_example().map(|_| ())
}
