#pragma once

#include <fockops/classify.hpp>
#include <fockops/commands.hpp>
#include <fockops/corpus.hpp>
#include <fockops/finite_section.hpp>
#include <fockops/json_io.hpp>
#include <fockops/norms.hpp>
#include <fockops/oracle.hpp>
#include <fockops/preimage.hpp>
#include <fockops/region.hpp>
#include <fockops/symbol.hpp>
