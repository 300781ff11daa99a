#ifndef IPRNPA_JSON_IO_HPP
#define IPRNPA_JSON_IO_HPP

#include <string>

#include "iprnpa/instance.hpp"

namespace iprnpa {

// Parsers throw StructuralError on malformed JSON, wrong types or missing
// required fields. Serialization is deterministic: fixed key order, maps
// emitted in ascending key order, so equal values give equal bytes.

Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

Solution parse_solution_json(const std::string& text);
std::string solution_to_json(const Solution& sol);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

Solution load_solution(const std::string& path);
void save_solution(const Solution& sol, const std::string& path);

std::string read_text_file(const std::string& path);   // throws StructuralError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace iprnpa

#endif
