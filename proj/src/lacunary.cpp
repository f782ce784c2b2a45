#include "emlab/lacunary.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace emlab {

std::string to_string(LacunaryVariant v) {
    return v == LacunaryVariant::Standard ? "standard" : "strong";
}

namespace {

std::int64_t growth_weight(int j, LacunaryVariant variant) {
    const std::int64_t jj = j;
    return variant == LacunaryVariant::Standard ? jj : jj * jj * jj;
}

}  // namespace

LacunaryPair make_lacunary(int j_max, LacunaryVariant variant) {
    if (j_max < 1) throw std::invalid_argument("make_lacunary: j_max must be >= 1");
    if (j_max > 30) throw std::invalid_argument("make_lacunary: j_max > 30 would overflow 64-bit frequencies");
    LacunaryPair pair;
    pair.variant = variant;
    pair.h.reserve(static_cast<std::size_t>(j_max));
    pair.k.reserve(static_cast<std::size_t>(j_max));
    std::int64_t k = 2;
    std::int64_t h = std::max<std::int64_t>(4, growth_weight(1, variant) * k);
    pair.k.push_back(k);
    pair.h.push_back(h);
    for (int j = 2; j <= j_max; ++j) {
        k *= 2;
        h = std::max(4 * h, growth_weight(j, variant) * k);
        pair.k.push_back(k);
        pair.h.push_back(h);
    }
    return pair;
}

LacunaryReport validate_lacunary(const LacunaryPair& pair) {
    LacunaryReport report;
    auto fail = [&](int j, std::string cond) {
        report.violations.push_back({j, std::move(cond)});
    };
    if (pair.h.size() != pair.k.size()) {
        fail(0, "h and k must have the same length");
        return report;
    }
    if (pair.h.empty()) {
        fail(0, "sequences must be nonempty");
        return report;
    }
    const int n = pair.size();
    for (int j = 1; j <= n; ++j) {
        if (pair.h_at(j) < 2) {
            std::ostringstream os;
            os << "h[" << j << "] = " << pair.h_at(j) << " must be >= 2";
            fail(j, os.str());
        }
        if (pair.k_at(j) < 2) {
            std::ostringstream os;
            os << "k[" << j << "] = " << pair.k_at(j) << " must be >= 2";
            fail(j, os.str());
        }
        const std::int64_t w = growth_weight(j, pair.variant);
        if (pair.h_at(j) < w * pair.k_at(j)) {
            std::ostringstream os;
            os << "h[" << j << "] = " << pair.h_at(j) << " must be >= "
               << (pair.variant == LacunaryVariant::Standard ? "j*k[j]" : "j^3*k[j]") << " = "
               << w * pair.k_at(j);
            fail(j, os.str());
        }
    }
    for (int j = 1; j < n; ++j) {
        if (pair.h_at(j + 1) < 4 * pair.h_at(j)) {
            std::ostringstream os;
            os << "h[" << j + 1 << "] = " << pair.h_at(j + 1) << " must be >= 4*h[" << j
               << "] = " << 4 * pair.h_at(j);
            fail(j, os.str());
        }
        if (pair.k_at(j + 1) < 2 * pair.k_at(j)) {
            std::ostringstream os;
            os << "k[" << j + 1 << "] = " << pair.k_at(j + 1) << " must be >= 2*k[" << j
               << "] = " << 2 * pair.k_at(j);
            fail(j, os.str());
        }
    }
    return report;
}

void save_lacunary(const LacunaryPair& pair, std::ostream& out) {
    out << "h:";
    for (std::int64_t v : pair.h) out << ' ' << v;
    out << "\nk:";
    for (std::int64_t v : pair.k) out << ' ' << v;
    out << "\nvariant: " << to_string(pair.variant) << "\n";
}

LacunaryPair load_lacunary(std::istream& in) {
    LacunaryPair pair;
    bool have_h = false, have_k = false, have_variant = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "h:") {
            std::int64_t v;
            while (ls >> v) pair.h.push_back(v);
            have_h = true;
        } else if (tag == "k:") {
            std::int64_t v;
            while (ls >> v) pair.k.push_back(v);
            have_k = true;
        } else if (tag == "variant:") {
            std::string name;
            ls >> name;
            if (name == "standard") {
                pair.variant = LacunaryVariant::Standard;
            } else if (name == "strong") {
                pair.variant = LacunaryVariant::Strong;
            } else {
                throw std::invalid_argument("load_lacunary: unknown variant '" + name + "'");
            }
            have_variant = true;
        } else {
            throw std::invalid_argument("load_lacunary: unexpected line '" + line + "'");
        }
    }
    if (!have_h || !have_k || !have_variant) {
        throw std::invalid_argument("load_lacunary: file must contain h:, k:, and variant: lines");
    }
    return pair;
}

void save_lacunary_file(const LacunaryPair& pair, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_lacunary_file: cannot open " + path);
    save_lacunary(pair, out);
}

LacunaryPair load_lacunary_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_lacunary_file: cannot open " + path);
    return load_lacunary(in);
}

}  // namespace emlab
