#pragma once

#include "ac_automaton.hpp"
#include "closed.hpp"
#include "codec.hpp"
#include "core.hpp"
#include "flexible.hpp"
#include "lexparse.hpp"
#include "lz78.hpp"
#include "lzd_lzmw.hpp"
#include "oracles.hpp"
#include "suffix_tree.hpp"
#include "text_index.hpp"
