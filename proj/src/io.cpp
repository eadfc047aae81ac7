#include "kron/io.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "kron/errors.hpp"
#include "kron/extend.hpp"

namespace kron {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool digits_only(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::size_t parse_size(const std::string& s) {
    Int v = parse_integer(s);
    if (v < 0 || !v.fits_ulong_p()) throw ParseError("value out of range: " + s);
    return static_cast<std::size_t>(v.get_ui());
}

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("bad float: " + s);
    return v;
}

}  // namespace

Int parse_integer(const std::string& s) {
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (!digits_only(s, start, s.size())) throw ParseError("bad integer: " + s);
    return Int(s);
}

Rat parse_rational(const std::string& s) {
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_integer(s));
    const Int num = parse_integer(s.substr(0, slash));
    const std::string den_s = s.substr(slash + 1);
    if (!digits_only(den_s, 0, den_s.size())) throw ParseError("bad rational: " + s);
    const Int den(den_s);
    if (den == 0) throw ParseError("zero denominator: " + s);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

bool JobConfig::operator==(const JobConfig& o) const {
    auto rel_eq = [&] {
        if (relations.has_value() != o.relations.has_value()) return false;
        if (!relations) return true;
        if (relations->rows() != o.relations->rows() || relations->cols() != o.relations->cols())
            return false;
        for (std::size_t i = 0; i < relations->rows(); ++i)
            for (std::size_t j = 0; j < relations->cols(); ++j)
                if (relations->at(i, j) != o.relations->at(i, j)) return false;
        return true;
    };
    return free_rank == o.free_rank && factors == o.factors && rel_eq() &&
           rel_gens == o.rel_gens && set_kind == o.set_kind && set_elems == o.set_elems &&
           set_bound == o.set_bound && k == o.k && arc_family == o.arc_family &&
           max_blocks == o.max_blocks && budget == o.budget && grid == o.grid &&
           epsilon == o.epsilon && wideness_n == o.wideness_n && probes == o.probes &&
           out == o.out;
}

std::string serialize_config(const JobConfig& c) {
    std::ostringstream out;
    out << "kron-config v1\n";
    out << "group " << c.free_rank << " " << c.factors.size();
    for (const Int& d : c.factors) out << " " << d.get_str();
    out << "\n";
    if (c.relations) {
        out << "relations " << c.rel_gens << " " << c.relations->rows();
        for (std::size_t i = 0; i < c.relations->rows(); ++i)
            for (std::size_t j = 0; j < c.relations->cols(); ++j)
                out << " " << c.relations->at(i, j).get_str();
        out << "\n";
    }
    switch (c.set_kind) {
        case SetKind::explicit_list:
            out << "set explicit\n";
            for (const auto& e : c.set_elems) {
                out << "elem";
                for (const Int& v : e) out << " " << v.get_str();
                out << "\n";
            }
            break;
        case SetKind::squares:
            out << "set squares\nbound " << c.set_bound.get_str() << "\n";
            break;
        case SetKind::primes:
            out << "set primes\nbound " << c.set_bound.get_str() << "\n";
            break;
    }
    out << "k " << c.k << "\n";
    for (const Arc& a : c.arc_family)
        out << "arc " << rat_str(a.start()) << " " << rat_str(a.length()) << "\n";
    out << "max_blocks " << c.max_blocks << "\n";
    out << "budget " << c.budget << "\n";
    out << "grid " << c.grid << "\n";
    out << "epsilon " << rat_str(c.epsilon) << "\n";
    out << "wideness " << c.wideness_n.get_str() << "\n";
    for (const auto& probe : c.probes) {
        out << "probe " << probe.size();
        out << " " << (probe.empty() ? 0 : probe[0].size());
        for (const auto& e : probe)
            for (const Int& v : e) out << " " << v.get_str();
        out << "\n";
    }
    if (!c.out.empty()) out << "out " << c.out << "\n";
    out << "end\n";
    return out.str();
}

JobConfig parse_config(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "kron-config v1")
        throw ParseError("missing kron-config v1 header");
    JobConfig c;
    c.wideness_n = 8;
    bool ended = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "end") {
            ended = true;
            break;
        } else if (key == "group") {
            if (tok.size() < 3) throw ParseError("group: expected rank and factor count");
            c.free_rank = parse_size(tok[1]);
            const std::size_t t = parse_size(tok[2]);
            if (tok.size() != 3 + t) throw ParseError("group: factor count mismatch");
            c.factors.clear();
            for (std::size_t i = 0; i < t; ++i) c.factors.push_back(parse_integer(tok[3 + i]));
        } else if (key == "relations") {
            if (tok.size() < 3) throw ParseError("relations: expected sizes");
            c.rel_gens = parse_size(tok[1]);
            const std::size_t rows = parse_size(tok[2]);
            if (tok.size() != 3 + rows * c.rel_gens)
                throw ParseError("relations: entry count mismatch");
            ZMat m(rows, c.rel_gens);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < c.rel_gens; ++j)
                    m.at(i, j) = parse_integer(tok[3 + i * c.rel_gens + j]);
            c.relations = m;
        } else if (key == "set") {
            if (tok.size() != 2) throw ParseError("set: expected one kind");
            if (tok[1] == "explicit")
                c.set_kind = SetKind::explicit_list;
            else if (tok[1] == "squares")
                c.set_kind = SetKind::squares;
            else if (tok[1] == "primes")
                c.set_kind = SetKind::primes;
            else
                throw ParseError("set: unknown kind " + tok[1]);
        } else if (key == "elem") {
            std::vector<Int> e;
            for (std::size_t i = 1; i < tok.size(); ++i) e.push_back(parse_integer(tok[i]));
            c.set_elems.push_back(std::move(e));
        } else if (key == "bound") {
            if (tok.size() != 2) throw ParseError("bound: expected one value");
            c.set_bound = parse_integer(tok[1]);
        } else if (key == "k") {
            if (tok.size() != 2) throw ParseError("k: expected one value");
            c.k = parse_size(tok[1]);
        } else if (key == "arc") {
            if (tok.size() != 3) throw ParseError("arc: expected start and length");
            c.arc_family.emplace_back(parse_rational(tok[1]), parse_rational(tok[2]));
        } else if (key == "max_blocks") {
            c.max_blocks = parse_size(tok.at(1));
        } else if (key == "budget") {
            c.budget = parse_size(tok.at(1));
        } else if (key == "grid") {
            c.grid = parse_size(tok.at(1));
        } else if (key == "epsilon") {
            c.epsilon = parse_rational(tok.at(1));
        } else if (key == "wideness") {
            c.wideness_n = parse_integer(tok.at(1));
        } else if (key == "probe") {
            if (tok.size() < 3) throw ParseError("probe: expected sizes");
            const std::size_t n = parse_size(tok[1]);
            const std::size_t dim = parse_size(tok[2]);
            if (tok.size() != 3 + n * dim) throw ParseError("probe: entry count mismatch");
            std::vector<std::vector<Int>> probe(n, std::vector<Int>(dim));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    probe[i][j] = parse_integer(tok[3 + i * dim + j]);
            c.probes.push_back(std::move(probe));
        } else if (key == "out") {
            c.out = line.substr(4);
        } else {
            throw ParseError("unknown config key: " + key);
        }
    }
    if (!ended) throw ParseError("config: missing end line");
    return c;
}

JobConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

AbelianGroup config_group(const JobConfig& c) {
    if (c.relations) return AbelianGroup::from_relations(c.rel_gens, *c.relations);
    return AbelianGroup(c.free_rank, c.factors);
}

std::vector<GroupElement> config_set(const JobConfig& c, const AbelianGroup& g) {
    std::vector<GroupElement> s;
    switch (c.set_kind) {
        case SetKind::explicit_list:
            for (const auto& e : c.set_elems) {
                if (e.size() != g.dim()) throw ParseError("elem: wrong coordinate count");
                s.push_back(g.element(e));
            }
            break;
        case SetKind::squares: {
            if (g.dim() != 1) throw ParseError("squares generator needs a rank-1 group");
            if (c.set_bound < 1) throw ParseError("squares: bound must be >= 1");
            for (Int n = 1; n <= c.set_bound; ++n) s.push_back(g.element({n * n}));
            break;
        }
        case SetKind::primes: {
            if (g.dim() != 1) throw ParseError("primes generator needs a rank-1 group");
            if (c.set_bound < 2) throw ParseError("primes: bound must be >= 2");
            Int p = 2;
            while (p <= c.set_bound) {
                s.push_back(g.element({p}));
                mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            }
            break;
        }
    }
    if (s.empty()) throw ParseError("config: empty set S");
    return s;
}

bool Report::operator==(const Report& o) const {
    auto cert_eq = [&] {
        if (certs.size() != o.certs.size()) return false;
        for (std::size_t i = 0; i < certs.size(); ++i)
            if (certs[i].stage != o.certs[i].stage || certs[i].witness != o.certs[i].witness ||
                certs[i].combo != o.certs[i].combo)
                return false;
        return true;
    };
    auto cov_eq = [&] {
        if (covering.has_value() != o.covering.has_value()) return false;
        if (!covering) return true;
        return covering->k == o.covering->k && covering->resolution == o.covering->resolution &&
               covering->grid_max == o.covering->grid_max &&
               covering->slack == o.covering->slack && covering->max_gap == o.covering->max_gap &&
               covering->hit_table == o.covering->hit_table;
    };
    return k == o.k && free_rank == o.free_rank && factors == o.factors && gens == o.gens &&
           images == o.images && boxes == o.boxes && cert_eq() && cov_eq();
}

std::string serialize_report(const Report& r) {
    std::ostringstream out;
    out << "kron-report v1\n";
    out << "group " << r.free_rank << " " << r.factors.size();
    for (const Int& d : r.factors) out << " " << d.get_str();
    out << "\n";
    out << "k " << r.k << "\n";
    for (std::size_t i = 0; i < r.gens.size(); ++i) {
        out << "gen " << r.gens[i].coords.size();
        for (const Int& v : r.gens[i].coords) out << " " << v.get_str();
        out << "\n";
        out << "img " << r.images[i].dim();
        for (const TorusElement& t : r.images[i].coords) out << " " << t.to_string();
        out << "\n";
    }
    for (const BoxNeighborhood& b : r.boxes) {
        out << "box " << b.blocks.size();
        for (std::size_t i = 0; i < b.blocks.size(); ++i)
            out << " " << b.blocks[i].first << " " << b.blocks[i].second << " "
                << rat_str(b.arcs[i].start()) << " " << rat_str(b.arcs[i].length());
        out << "\n";
    }
    for (const Certificate& c : r.certs) {
        out << "cert " << c.stage << " " << c.witness.coords.size();
        for (const Int& v : c.witness.coords) out << " " << v.get_str();
        out << " " << c.combo.size();
        for (const Int& v : c.combo) out << " " << v.get_str();
        out << "\n";
    }
    if (r.covering) {
        out << "covering " << r.covering->resolution << " " << double_str(r.covering->grid_max)
            << " " << double_str(r.covering->slack) << " " << double_str(r.covering->max_gap)
            << "\n";
        out << "hits ";
        for (std::uint8_t h : r.covering->hit_table) out << (h ? '1' : '0');
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

Report parse_report(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "kron-report v1")
        throw ParseError("missing kron-report v1 header");
    Report r;
    bool have_group = false;
    bool ended = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "end") {
            ended = true;
            break;
        } else if (key == "group") {
            if (tok.size() < 3) throw ParseError("group: expected sizes");
            r.free_rank = parse_size(tok[1]);
            const std::size_t t = parse_size(tok[2]);
            if (tok.size() != 3 + t) throw ParseError("group: factor count mismatch");
            for (std::size_t i = 0; i < t; ++i) r.factors.push_back(parse_integer(tok[3 + i]));
            have_group = true;
        } else if (key == "k") {
            r.k = parse_size(tok.at(1));
        } else if (key == "gen") {
            if (!have_group) throw ParseError("gen before group line");
            const std::size_t d = parse_size(tok.at(1));
            if (tok.size() != 2 + d) throw ParseError("gen: coordinate count mismatch");
            std::vector<Int> coords;
            for (std::size_t i = 0; i < d; ++i) coords.push_back(parse_integer(tok[2 + i]));
            r.gens.push_back(AbelianGroup(r.free_rank, r.factors).element(coords));
        } else if (key == "img") {
            const std::size_t d = parse_size(tok.at(1));
            if (tok.size() != 2 + d) throw ParseError("img: coordinate count mismatch");
            TorusVector v;
            for (std::size_t i = 0; i < d; ++i)
                v.coords.push_back(TorusElement::parse(tok[2 + i]));
            r.images.push_back(std::move(v));
        } else if (key == "box") {
            const std::size_t nb = parse_size(tok.at(1));
            if (tok.size() != 2 + 4 * nb) throw ParseError("box: field count mismatch");
            BoxNeighborhood b;
            b.k = r.k;
            for (std::size_t i = 0; i < nb; ++i) {
                b.blocks.emplace_back(parse_size(tok[2 + 4 * i]), parse_size(tok[3 + 4 * i]));
                b.arcs.emplace_back(parse_rational(tok[4 + 4 * i]),
                                    parse_rational(tok[5 + 4 * i]));
            }
            r.boxes.push_back(std::move(b));
        } else if (key == "cert") {
            Certificate c;
            c.stage = parse_size(tok.at(1));
            const std::size_t d = parse_size(tok.at(2));
            if (tok.size() < 3 + d + 1) throw ParseError("cert: truncated");
            std::vector<Int> coords;
            for (std::size_t i = 0; i < d; ++i) coords.push_back(parse_integer(tok[3 + i]));
            if (!have_group) throw ParseError("cert before group line");
            c.witness = AbelianGroup(r.free_rank, r.factors).element(coords);
            const std::size_t nc = parse_size(tok[3 + d]);
            if (tok.size() != 4 + d + nc) throw ParseError("cert: combo count mismatch");
            for (std::size_t i = 0; i < nc; ++i)
                c.combo.push_back(parse_integer(tok[4 + d + i]));
            r.certs.push_back(std::move(c));
        } else if (key == "covering") {
            if (tok.size() != 5) throw ParseError("covering: field count mismatch");
            CoveringReport cov;
            cov.k = r.k;
            cov.resolution = parse_size(tok[1]);
            cov.grid_max = parse_double(tok[2]);
            cov.slack = parse_double(tok[3]);
            cov.max_gap = parse_double(tok[4]);
            r.covering = cov;
        } else if (key == "hits") {
            if (!r.covering) throw ParseError("hits before covering line");
            if (tok.size() != 2) throw ParseError("hits: expected one bit string");
            r.covering->hit_table.clear();
            for (char ch : tok[1]) {
                if (ch != '0' && ch != '1') throw ParseError("hits: bad bit");
                r.covering->hit_table.push_back(ch == '1');
            }
        } else {
            throw ParseError("unknown report key: " + key);
        }
    }
    if (!ended) throw ParseError("report: missing end line");
    if (r.gens.size() != r.images.size()) throw ParseError("report: gen/img mismatch");
    return r;
}

Report parse_report_text(const std::string& text) {
    std::istringstream in(text);
    return parse_report(in);
}

void verify_report(const Report& r) {
    const AbelianGroup g(r.free_rank, r.factors);
    const TorusCodomain cod{r.k};
    for (const TorusVector& v : r.images)
        if (v.dim() != r.k) throw CertificateError("image dimension mismatch");
    HomSpec<TorusCodomain> phi{r.gens, r.images};
    if (!hom_well_defined(g, cod, phi))
        throw CertificateError("the homomorphism is not well defined");
    if (!hom_injective(g, cod, phi)) throw CertificateError("injectivity failure");

    std::vector<char> covered(r.boxes.size(), 0);
    for (const Certificate& c : r.certs) {
        const std::string at = "stage " + std::to_string(c.stage);
        if (c.stage >= r.boxes.size()) throw CertificateError(at + ": no such box");
        if (c.combo.size() > r.gens.size()) throw CertificateError(at + ": combo too long");
        GroupElement acc = g.zero();
        for (std::size_t i = 0; i < c.combo.size(); ++i)
            if (c.combo[i] != 0) acc = g.add(acc, g.scale(c.combo[i], r.gens[i]));
        if (!(acc == c.witness))
            throw CertificateError(at + ": combination does not reproduce the witness");
        const TorusVector img = evaluate_hom_combo(cod, phi, c.combo);
        if (!r.boxes[c.stage].contains(img))
            throw CertificateError(at + ": witness image misses the box");
        covered[c.stage] = 1;
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            throw CertificateError("stage " + std::to_string(i) + ": no certificate");
}

}  // namespace kron
