#pragma once

#include "fptedit/value_set.hpp"
#include "fptedit/graph.hpp"
#include "fptedit/instance.hpp"
#include "fptedit/constraints.hpp"
#include "fptedit/edit_script.hpp"
#include "fptedit/generators.hpp"
#include "fptedit/oracle.hpp"
#include "fptedit/clean_region.hpp"
#include "fptedit/kernelize.hpp"
#include "fptedit/search_tree.hpp"
#include "fptedit/treewidth.hpp"
#include "fptedit/io.hpp"
