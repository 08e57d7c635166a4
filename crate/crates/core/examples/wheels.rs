//! Strings, minimal elements and the sets S̄ for the pair (12, 31).

use cgr::wheels::{sbar_bruteforce, WheelData};

fn main() -> cgr::Result<()> {
    let w = WheelData::new(12, 31)?;
    println!("sequence i_t: {:?}", w.seq);
    for s in &w.strings {
        println!("  string {s:?}");
    }
    println!("minimal elements: {:?}", w.minimal_elements);
    let (j, l) = (15, 22);
    println!("closed S({j},{l}) = {:?}", w.sbar_closed(j, l));
    println!("order   S({j},{l}) = {:?}", sbar_bruteforce(12, 31, j, l)?);
    Ok(())
}
