#include "maxplus/model_io.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>

#include "maxplus/errors.hpp"

namespace maxplus {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
    }
    std::vector<std::string> tokens;
    std::istringstream is{std::string(line)};
    std::string token;
    while (is >> token) {
        tokens.push_back(token);
    }
    return tokens;
}

[[noreturn]] void fail(int line_no, const std::string& message) {
    throw ParseError("line " + std::to_string(line_no) + ": " + message);
}

long parse_marking(const std::string& token, int line_no) {
    for (char c : token) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            fail(line_no, "marking must be a non-negative integer, got '" + token + "'");
        }
    }
    if (token.empty() || token.size() > 9) {
        fail(line_no, "unreasonable marking '" + token + "'");
    }
    return std::stol(token);
}

bool valid_name(const std::string& name) {
    if (name.empty() || name == "inf") {
        return false;
    }
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#') {
            return false;
        }
    }
    return true;
}

} // namespace

ModelFile parse_model(std::string_view text) {
    ModelFile model;
    std::map<std::string, int> index;
    bool saw_header = false;

    std::istringstream is{std::string(text)};
    std::string raw_line;
    int line_no = 0;
    while (std::getline(is, raw_line)) {
        ++line_no;
        std::vector<std::string> tokens = tokenize(raw_line);
        if (tokens.empty()) {
            continue;
        }
        if (!saw_header) {
            if (tokens.size() != 2 || tokens[0] != "pteg") {
                fail(line_no, "expected header 'pteg v1'");
            }
            if (tokens[1] != kModelFormatVersion) {
                fail(line_no, "unsupported format version '" + tokens[1] + "'");
            }
            model.format_version = tokens[1];
            saw_header = true;
            continue;
        }
        if (tokens[0] == "transitions") {
            for (size_t k = 1; k < tokens.size(); ++k) {
                if (!valid_name(tokens[k])) {
                    fail(line_no, "invalid transition name '" + tokens[k] + "'");
                }
                if (!index.emplace(tokens[k], model.spec.transition_count()).second) {
                    fail(line_no, "duplicate transition '" + tokens[k] + "'");
                }
                model.spec.transitions.push_back(tokens[k]);
            }
        } else if (tokens[0] == "place") {
            if (tokens.size() != 6) {
                fail(line_no, "expected: place <from> <to> <marking> <lower> <upper>");
            }
            auto from = index.find(tokens[1]);
            auto to = index.find(tokens[2]);
            if (from == index.end()) {
                fail(line_no, "unknown transition '" + tokens[1] + "'");
            }
            if (to == index.end()) {
                fail(line_no, "unknown transition '" + tokens[2] + "'");
            }
            PlaceSpec place;
            place.from = from->second;
            place.to = to->second;
            place.marking = parse_marking(tokens[3], line_no);
            try {
                place.lower = parse_rational(tokens[4]);
                if (tokens[5] != "inf") {
                    place.upper = parse_rational(tokens[5]);
                }
            } catch (const ParseError& e) {
                fail(line_no, e.what());
            }
            model.spec.places.push_back(std::move(place));
        } else {
            fail(line_no, "unknown directive '" + tokens[0] + "'");
        }
    }
    if (!saw_header) {
        throw ParseError("empty model: missing 'pteg v1' header");
    }
    return model;
}

std::string emit_model(const EventGraphSpec& spec) {
    for (const std::string& name : spec.transitions) {
        if (!valid_name(name)) {
            throw DomainError("transition name '" + name + "' is not representable");
        }
    }
    std::ostringstream os;
    os << "pteg " << kModelFormatVersion << "\n";
    if (!spec.transitions.empty()) {
        os << "transitions";
        for (const std::string& name : spec.transitions) {
            os << " " << name;
        }
        os << "\n";
    }
    for (const PlaceSpec& p : spec.places) {
        os << "place " << spec.transitions[p.from] << " " << spec.transitions[p.to] << " "
           << p.marking << " " << rat_str(p.lower) << " "
           << (p.upper ? rat_str(*p.upper) : "inf") << "\n";
    }
    return os.str();
}

std::string fnv1a_digest(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return "fnv1a:" + std::string(buf);
}

} // namespace maxplus
