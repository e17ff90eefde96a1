#pragma once

#include "tacho/event_io.hpp"
#include "tacho/knowledge.hpp"
#include "tacho/metatheory.hpp"
#include "tacho/report.hpp"
#include "tacho/restrictions.hpp"
#include "tacho/segmentation.hpp"
#include "tacho/timeline.hpp"
#include "tacho/weekly_regime.hpp"
