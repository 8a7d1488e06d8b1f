#include "tablesense/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

//! Renders a Turtle string literal with the required escapes.
std::string turtle_literal(const std::string& text) {
    std::string out = "\"";
    for (unsigned char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04X", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    out += '"';
    return out;
}

//! True when the local name may be written as a prefixed name rather than a
//! full <...> IRI. Minted slugs always qualify; this guards hand-built sets.
bool simple_local_name(const std::string& local) {
    if (local.empty() || local.front() == '-' || local.back() == '.') return false;
    for (char c : local) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') return false;
    }
    return true;
}

//! Prefixed form when the IRI lives in the namespace, <...> otherwise.
std::string render_iri(const std::string& iri, const std::string& ns) {
    if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) {
        const std::string local = iri.substr(ns.size());
        if (simple_local_name(local)) return "ns:" + local;
    }
    return "<" + iri + ">";
}

std::string render_term(const RdfTerm& term, const std::string& ns) {
    return term.kind == RdfTerm::Kind::Iri ? render_iri(term.value, ns)
                                           : turtle_literal(term.value);
}

CellGrid transpose(const CellGrid& grid) {
    CellGrid t;
    t.source = grid.source;
    t.cells.assign(grid.cols(), std::vector<std::string>(grid.rows()));
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            t.cells[j][i] = grid.cells[i][j];
        }
    }
    return t;
}

} // namespace

std::string slugify(const std::string& text) {
    std::string slug;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            slug += static_cast<char>(std::tolower(c));
        } else if (c == ' ' && !slug.empty() && slug.back() != '-') {
            slug += '-';
        }
    }
    while (!slug.empty() && slug.back() == '-') slug.pop_back();
    return slug;
}

void validate_base_uri(const std::string& base_uri) {
    if (base_uri.empty()) throw InvalidBaseUri("base URI is empty");

    const std::size_t colon = base_uri.find(':');
    if (colon == 0 || colon == std::string::npos) {
        throw InvalidBaseUri("base URI needs a scheme: " + base_uri);
    }
    for (std::size_t i = 0; i < colon; ++i) {
        const unsigned char c = static_cast<unsigned char>(base_uri[i]);
        const bool ok = std::isalpha(c) || (i > 0 && (std::isdigit(c) || c == '+' || c == '-' || c == '.'));
        if (!ok) throw InvalidBaseUri("malformed scheme in base URI: " + base_uri);
    }
    for (unsigned char c : base_uri) {
        if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
            c == '^' || c == '`' || c == '\\') {
            throw InvalidBaseUri("base URI contains a character not allowed in IRIs: " + base_uri);
        }
    }
}

TripleSet to_triples(const CellGrid& grid, Orientation orientation, const std::string& base_uri) {
    validate_base_uri(base_uri);

    const CellGrid oriented = orientation == Orientation::Vertical ? transpose(grid) : grid;
    const std::size_t n = oriented.rows();
    const std::size_t m = oriented.cols();
    if (n < 2 || m < 2) {
        throw DegenerateTable("need at least 2x2 cells, got " + std::to_string(n) + "x" +
                              std::to_string(m));
    }

    // Class from the top-left header; property predicates from the remaining
    // headers, deduplicated with numeric suffixes.
    std::string class_slug = slugify(oriented.cells[0][0]);
    if (class_slug.empty()) class_slug = "Entity";
    const std::string class_iri = base_uri + class_slug;

    std::vector<std::string> predicate(m);
    std::set<std::string> used;
    for (std::size_t j = 1; j < m; ++j) {
        std::string slug = slugify(oriented.cells[0][j]);
        if (slug.empty()) slug = "col" + std::to_string(j + 1);
        std::string unique = slug;
        for (int suffix = 2; !used.insert(unique).second; ++suffix) {
            unique = slug + "-" + std::to_string(suffix);
        }
        predicate[j] = base_uri + unique;
    }

    TripleSet ts;
    ts.namespace_uri = base_uri;
    for (std::size_t i = 1; i < n; ++i) {
        const std::string instance = base_uri + "row" + std::to_string(i);
        ts.triples.push_back({instance, kRdfType, RdfTerm::iri(class_iri)});
        if (!oriented.cells[i][0].empty()) {
            ts.triples.push_back({instance, kRdfsLabel, RdfTerm::literal(oriented.cells[i][0])});
        }
        for (std::size_t j = 1; j < m; ++j) {
            if (oriented.cells[i][j].empty()) continue;
            ts.triples.push_back({instance, predicate[j], RdfTerm::literal(oriented.cells[i][j])});
        }
    }
    return ts;
}

std::string serialize_turtle(const TripleSet& ts) {
    std::ostringstream out;
    out << "@prefix ns: <" << ts.namespace_uri << "> .\n";

    // Group triples per subject, keeping the subjects' first-appearance order
    // (to_triples emits instances in row order).
    std::vector<std::string> subjects;
    std::map<std::string, std::vector<const Triple*>> grouped;
    for (const Triple& t : ts.triples) {
        auto [it, inserted] = grouped.try_emplace(t.subject);
        if (inserted) subjects.push_back(t.subject);
        it->second.push_back(&t);
    }

    for (const std::string& subject : subjects) {
        std::vector<const Triple*>& triples = grouped[subject];
        // rdf:type first (rendered as `a`), then predicates lexicographically,
        // ties broken by object so the output is a pure function of the set.
        std::sort(triples.begin(), triples.end(), [](const Triple* a, const Triple* b) {
            const bool a_type = a->predicate == kRdfType;
            const bool b_type = b->predicate == kRdfType;
            if (a_type != b_type) return a_type;
            if (a->predicate != b->predicate) return a->predicate < b->predicate;
            return a->object < b->object;
        });

        out << '\n' << render_iri(subject, ts.namespace_uri);
        for (std::size_t i = 0; i < triples.size(); ++i) {
            const Triple& t = *triples[i];
            const std::string pred =
                t.predicate == kRdfType ? "a" : render_iri(t.predicate, ts.namespace_uri);
            out << (i == 0 ? " " : "    ") << pred << ' '
                << render_term(t.object, ts.namespace_uri)
                << (i + 1 == triples.size() ? " .\n" : " ;\n");
        }
    }
    return out.str();
}

} // namespace tablesense
