fn main() {
    println!("hesseflow");
}
