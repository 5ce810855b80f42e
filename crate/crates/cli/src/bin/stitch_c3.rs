//! Regenerate `crates/core/data/c3_chartab.csv` from the four committed
//! block fixtures (rows 1–50 / 51–67 × columns 1–32 / 33–67), so the
//! transcription of the 67×67 table stays auditable block by block.
//!
//! Usage: `cargo run -p cliffordtab-cli --bin stitch-c3 [out_path]`

use cliffordtab::refdata::{c3_block_texts, stitch_c3_blocks};

fn main() -> anyhow::Result<()> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "crates/core/data/c3_chartab.csv".to_string());
    let [tl, tr, bl, br] = c3_block_texts();
    let stitched = stitch_c3_blocks(tl, tr, bl, br)?;
    std::fs::write(&out, &stitched)?;
    eprintln!("wrote {} ({} bytes)", out, stitched.len());
    Ok(())
}
