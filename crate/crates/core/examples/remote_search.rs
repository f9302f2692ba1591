//! Candidate documents from a canned search-service response instead of the
//! local index. Ids missing from the corpus are dropped.

use bioqa::answer::QaSystem;
use bioqa::retrieval::{parse_remote_idlist, FileStubSearcher};

fn main() {
    let dir = bioqa::data_dir().join("remote_stub");
    let system = QaSystem::bundled()
        .unwrap()
        .with_remote(Box::new(FileStubSearcher::new(&dir)));
    let q = "Is imatinib an antidepressant drug?";

    let r = system.retrieve_documents(q);
    let path = FileStubSearcher::new(&dir).path_for(&r.query);
    let raw = parse_remote_idlist(&std::fs::read_to_string(&path).unwrap()).unwrap();
    println!("query {:?} -> {}", r.query.boolean(), path.display());
    println!("service returned {raw:?}");
    for d in &r.docs {
        println!("  {} {:.3} {}", d.rank, d.score, d.doc_id);
    }
}
