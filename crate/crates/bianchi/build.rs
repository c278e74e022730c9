use std::env;
use std::fs;
use std::path::PathBuf;

fn main() {
    let manifest = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let data = manifest.join("data");
    println!("cargo:rerun-if-changed={}", data.display());

    let mut files = Vec::new();
    if let Ok(entries) = fs::read_dir(&data) {
        for entry in entries.flatten() {
            let path = entry.path();
            if path.extension().and_then(|s| s.to_str()) == Some("cat") {
                files.push(path);
            }
        }
    }
    files.sort();

    let mut out = String::from("static BUILTIN_FILES: &[(&str, &str)] = &[\n");
    for path in files {
        let id = path.file_stem().unwrap().to_str().unwrap();
        out.push_str(&format!(
            "    ({:?}, include_str!({:?})),\n",
            id,
            path.display().to_string()
        ));
    }
    out.push_str("];\n");

    let dest = PathBuf::from(env::var("OUT_DIR").unwrap()).join("registry.rs");
    fs::write(dest, out).unwrap();
}
