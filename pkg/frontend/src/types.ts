// Wire types for the versioned template service API.

export interface OptionDoc {
  content: string;
  frequency: number;
  category: string | null;
  color: string | null;
  extra_categories: string[];
  contributors: string[];
}

export interface HotSpotDoc {
  span: [number, number];
  options: OptionDoc[];
}

export type SegmentDoc =
  | { kind: "text"; text: string }
  | { kind: "hotspot"; hotspot: number };

export interface CounterpartDoc {
  id: string;
  repo: string | null;
  url: string | null;
  stars: number;
  contributors: number;
  watches: number;
}

export type EdgeEnd = [number, number]; // [hotspot index, option index]

export interface TemplateDoc {
  version: number;
  example_id: string;
  segments: SegmentDoc[];
  hotspots: HotSpotDoc[];
  edges: [EdgeEnd, EdgeEnd][];
  counterparts: CounterpartDoc[];
}

export interface SessionView {
  session_id: string;
  example_id: string;
  chosen: Record<string, number>;
  explicit: Record<string, number>;
  auto_chosen: [number, number][];
  active_counterparts: string[];
  frequencies: number[][];
  history_depth: number;
}

export interface ExampleSummary {
  id: string;
  hotspot_count: number;
  lines: number;
  counterparts: number;
}
