// Fixed qualitative palette, one visually distinct color per category.
// Mirrors the service's category colors; the UI never invents colors.

export const CATEGORY_COLORS: Record<string, string> = {
  CodeHardening: "#66c2a5",
  ResolveCompilationErrors: "#fc8d62",
  ExceptionHandling: "#8da0cb",
  LogicCustomization: "#e78ac8",
  Refactoring: "#a6d854",
  Miscellaneous: "#ffd92f",
};

export const ORIGINAL_COLOR = "#e8e8e8";

export function colorFor(category: string | null, hideMisc: boolean): string {
  if (category === null) return ORIGINAL_COLOR;
  if (hideMisc && category === "Miscellaneous") return ORIGINAL_COLOR;
  return CATEGORY_COLORS[category] ?? ORIGINAL_COLOR;
}
