// Regenerates the bundled K3 document (data/k3.json).

#include "pwv/document.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    const std::string text = pwv::k3_document().to_json_text();
    if (argc > 1) {
        std::ofstream out(argv[1], std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << argv[1] << "'\n";
            return 1;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}
