// Text formats. Every file is a JSON object carrying "format" and "version";
// integral coordinates are written as integers, others in shortest
// round-trip form, so write(read(x)) reproduces x byte for byte.
#ifndef MATCHKIT_IO_HPP
#define MATCHKIT_IO_HPP

#include "matchkit/reduction.hpp"

#include <filesystem>
#include <string>

namespace matchkit::io {

inline constexpr int kFormatVersion = 1;

// Parse errors throw InputError naming the line/column or the field.
Polyline parse_curve(const std::string& text);
std::string format_curve(const Polyline& c);

Network parse_network(const std::string& text);
std::string format_network(const Network& n);

EmbeddedFormula parse_formula(const std::string& text);
std::string format_formula(const EmbeddedFormula& f);

Walk parse_walk(const std::string& text);
std::string format_walk(const Walk& w);

/// Gadget records plus the marker edges.
std::string format_provenance(const Instance& inst);
void parse_provenance(const std::string& text, Instance& inst);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

/// Directory holding files "network", "curve" and "provenance".
void write_instance(const std::filesystem::path& dir, const Instance& inst);
Instance read_instance(const std::filesystem::path& dir);

}  // namespace matchkit::io

#endif  // MATCHKIT_IO_HPP
