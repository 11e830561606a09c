use cbindgen::{Config, EnumConfig, Language, RenameRule};

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    let mut config = Config::default();
    config.language = Language::C;
    config.include_guard = Some("KHI_H".into());
    config.cpp_compat = true;
    config.enumeration = EnumConfig { rename_variants: RenameRule::ScreamingSnakeCase, prefix_with_name: true, ..Default::default() };
    cbindgen::Builder::new()
        .with_crate(".")
        .with_config(config)
        .generate()
        .expect("Unable to generate bindings")
        .write_to_file("include/khi.h");
}
