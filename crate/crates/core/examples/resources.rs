//! Load resources through a manifest, build and persist an index, reload it.

use bioqa::ingest::{load_corpus, load_index, load_manifest, load_resources_from, save_index};
use bioqa::retrieval::{build_index, Corpus, IndexMode};

fn main() {
    let manifest = load_manifest(bioqa::data_dir().join("manifest.json")).unwrap();
    let res = load_resources_from(&manifest).unwrap();
    for f in &res.files {
        println!("{:<14} {}  {}", f.name, &f.sha256[..16], f.path.display());
    }

    let corpus = Corpus::new(load_corpus(manifest.corpus_path().unwrap()).unwrap()).unwrap();
    let index = build_index(&corpus.units(), IndexMode::Document, &res.analyzer()).unwrap();
    let dir = std::env::temp_dir().join("bioqa-example");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("index.json");
    save_index(&path, &index).unwrap();
    let back = load_index(&path).unwrap();
    println!(
        "\n{} units, {} terms, avg length {:.1}; reload equal: {}",
        back.n,
        back.postings.len(),
        back.avg_len,
        back == index
    );
}
