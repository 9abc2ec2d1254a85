#pragma once

#include "ahn/backward.hpp"
#include "ahn/canonical.hpp"
#include "ahn/clique_graph.hpp"
#include "ahn/embedding.hpp"
#include "ahn/enumerate.hpp"
#include "ahn/error.hpp"
#include "ahn/forward.hpp"
#include "ahn/graph.hpp"
#include "ahn/graph_io.hpp"
#include "ahn/minsky.hpp"
#include "ahn/protocol.hpp"
#include "ahn/protocol_parser.hpp"
#include "ahn/semantics.hpp"
#include "ahn/topology.hpp"
