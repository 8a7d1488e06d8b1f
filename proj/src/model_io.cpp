#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "tablesense/classifiers.hpp"
#include "tablesense/errors.hpp"

namespace tablesense {

namespace {

constexpr const char* kFormatTag = "tablesense-model v1";

//! Shortest representation that parses back to the identical double.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += fmt(v[i]);
    }
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ModelFormatError("expected a number, got: " + s);
    return v;
}

long parse_long(const std::string& s) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str()) throw ModelFormatError("expected an integer, got: " + s);
    return v;
}

std::vector<double> parse_doubles(const std::string& s, std::size_t expected) {
    std::istringstream in(s);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_double(tok));
    if (out.size() != expected) {
        throw ModelFormatError("expected " + std::to_string(expected) + " numbers, got " +
                               std::to_string(out.size()));
    }
    return out;
}

/*!
 * Reads "key: value" lines into an ordered key->value map plus the list of
 * repeated "node:"/"sample:" lines, which are the only keys allowed to occur
 * more than once.
 */
struct ParsedFile {
    std::map<std::string, std::string> fields;
    std::vector<std::string> items; // values of repeated node:/sample: lines
};

ParsedFile parse_lines(const std::string& text) {
    ParsedFile parsed;
    std::istringstream in(text);
    std::string line;

    if (!std::getline(in, line) || line != kFormatTag) {
        throw ModelFormatError("missing or unsupported format tag");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos) throw ModelFormatError("malformed line: " + line);
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        if (key == "node" || key == "sample") {
            parsed.items.push_back(value);
        } else if (!parsed.fields.emplace(key, value).second) {
            throw ModelFormatError("duplicate key: " + key);
        }
    }
    return parsed;
}

const std::string& require(const ParsedFile& parsed, const std::string& key) {
    const auto it = parsed.fields.find(key);
    if (it == parsed.fields.end()) throw ModelFormatError("missing key: " + key);
    return it->second;
}

void write_metric(std::ostringstream& out, const MetricConfig& m) {
    out << "metric.kind: " << to_string(m.kind) << '\n';
    out << "metric.modified: " << (m.modified ? 1 : 0) << '\n';
    out << "metric.ngram_n: " << m.ngram_n << '\n';
    out << "metric.long_string_word_limit: " << m.long_string_word_limit << '\n';
    out << "metric.long_string_cap: " << fmt(m.long_string_cap) << '\n';
    out << "metric.jw_prefix_scale: " << fmt(m.jw_prefix_scale) << '\n';
    out << "metric.jw_max_prefix: " << m.jw_max_prefix << '\n';
}

MetricConfig read_metric(const ParsedFile& parsed) {
    MetricConfig m;
    const auto kind = metric_kind_from_string(require(parsed, "metric.kind"));
    if (!kind.has_value()) {
        throw ModelFormatError("unknown metric kind: " + require(parsed, "metric.kind"));
    }
    m.kind = *kind;
    m.modified = parse_long(require(parsed, "metric.modified")) != 0;
    m.ngram_n = static_cast<std::size_t>(parse_long(require(parsed, "metric.ngram_n")));
    m.long_string_word_limit =
        static_cast<std::size_t>(parse_long(require(parsed, "metric.long_string_word_limit")));
    m.long_string_cap = parse_double(require(parsed, "metric.long_string_cap"));
    m.jw_prefix_scale = parse_double(require(parsed, "metric.jw_prefix_scale"));
    m.jw_max_prefix = static_cast<std::size_t>(parse_long(require(parsed, "metric.jw_max_prefix")));
    validate(m);
    return m;
}

} // namespace

std::string write_model(const Model& model) {
    std::ostringstream out;
    out << kFormatTag << '\n';
    out << "family: " << to_string(model.family) << '\n';
    out << "task: " << to_string(model.task) << '\n';
    out << "dimension: " << model.dimension << '\n';
    write_metric(out, model.metric);

    if (const auto* nb = std::get_if<NaiveBayesParams>(&model.params)) {
        const auto dump = [&](const char* side, const GaussianStats& g) {
            out << "nb." << side << ".prior: " << fmt(g.prior) << '\n';
            out << "nb." << side << ".mean: " << fmt(g.mean) << '\n';
            out << "nb." << side << ".variance: " << fmt(g.variance) << '\n';
        };
        dump("negative", nb->negative);
        dump("positive", nb->positive);
    } else if (const auto* tree = std::get_if<DecisionTreeParams>(&model.params)) {
        out << "tree.nodes: " << tree->nodes.size() << '\n';
        for (const TreeNode& n : tree->nodes) {
            out << "node: " << n.feature << ' ' << fmt(n.threshold) << ' ' << n.left << ' '
                << n.right << ' ' << n.leaf_label << '\n';
        }
    } else if (const auto* knn = std::get_if<KnnParams>(&model.params)) {
        out << "knn.k: " << knn->k << '\n';
        out << "knn.samples: " << knn->points.size() << '\n';
        for (std::size_t i = 0; i < knn->points.size(); ++i) {
            out << "sample: " << knn->labels[i] << ' ' << fmt(knn->points[i]) << '\n';
        }
    } else if (const auto* svm = std::get_if<SvmParams>(&model.params)) {
        out << "svm.bias: " << fmt(svm->bias) << '\n';
        out << "svm.weights: " << fmt(svm->weights) << '\n';
    }
    return out.str();
}

Model read_model(const std::string& text) {
    const ParsedFile parsed = parse_lines(text);

    Model model;
    model.family = family_from_string(require(parsed, "family"));
    model.task = task_from_string(require(parsed, "task"));
    const long dim = parse_long(require(parsed, "dimension"));
    if (dim <= 0) throw ModelFormatError("dimension must be positive");
    model.dimension = static_cast<std::size_t>(dim);
    try {
        model.metric = read_metric(parsed);
    } catch (const InvalidConfig& e) {
        throw ModelFormatError(std::string("bad metric configuration: ") + e.what());
    }

    switch (model.family) {
    case Family::NaiveBayes: {
        NaiveBayesParams nb;
        const auto load = [&](const char* side, GaussianStats& g) {
            const std::string prefix = std::string("nb.") + side;
            g.prior = parse_double(require(parsed, prefix + ".prior"));
            g.mean = parse_doubles(require(parsed, prefix + ".mean"), model.dimension);
            g.variance = parse_doubles(require(parsed, prefix + ".variance"), model.dimension);
        };
        load("negative", nb.negative);
        load("positive", nb.positive);
        model.params = std::move(nb);
        break;
    }
    case Family::DecisionTree: {
        DecisionTreeParams tree;
        const long count = parse_long(require(parsed, "tree.nodes"));
        if (count <= 0 || static_cast<std::size_t>(count) != parsed.items.size()) {
            throw ModelFormatError("node count does not match node lines");
        }
        for (const std::string& item : parsed.items) {
            std::istringstream in(item);
            std::string f, thr, l, r, leaf;
            if (!(in >> f >> thr >> l >> r >> leaf)) {
                throw ModelFormatError("malformed node line: " + item);
            }
            TreeNode n;
            n.feature = static_cast<int>(parse_long(f));
            n.threshold = parse_double(thr);
            n.left = static_cast<int>(parse_long(l));
            n.right = static_cast<int>(parse_long(r));
            n.leaf_label = static_cast<int>(parse_long(leaf));
            const auto in_range = [&](int child) {
                return child == -1 || (child > 0 && child < count);
            };
            if (!in_range(n.left) || !in_range(n.right) ||
                (n.feature >= 0 && n.feature >= static_cast<int>(model.dimension))) {
                throw ModelFormatError("node references out of range: " + item);
            }
            tree.nodes.push_back(n);
        }
        model.params = std::move(tree);
        break;
    }
    case Family::Knn: {
        KnnParams knn;
        const long k = parse_long(require(parsed, "knn.k"));
        const long count = parse_long(require(parsed, "knn.samples"));
        if (k <= 0) throw ModelFormatError("knn.k must be positive");
        if (count <= 0 || static_cast<std::size_t>(count) != parsed.items.size()) {
            throw ModelFormatError("sample count does not match sample lines");
        }
        knn.k = static_cast<std::size_t>(k);
        for (const std::string& item : parsed.items) {
            const std::size_t space = item.find(' ');
            if (space == std::string::npos) throw ModelFormatError("malformed sample: " + item);
            const long label = parse_long(item.substr(0, space));
            if (label != 0 && label != 1) throw ModelFormatError("sample label must be 0 or 1");
            knn.labels.push_back(static_cast<int>(label));
            knn.points.push_back(parse_doubles(item.substr(space + 1), model.dimension));
        }
        model.params = std::move(knn);
        break;
    }
    case Family::Svm: {
        SvmParams svm;
        svm.bias = parse_double(require(parsed, "svm.bias"));
        svm.weights = parse_doubles(require(parsed, "svm.weights"), model.dimension);
        model.params = std::move(svm);
        break;
    }
    }
    return model;
}

} // namespace tablesense
