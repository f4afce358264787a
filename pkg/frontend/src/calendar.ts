// Admin Calendar screen logic: parsing pasted holiday lists before upload.

import { DocketApi } from "./api.js";

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

export interface ParsedDates {
  dates: string[];
  errors: string[];
}

// One ISO date per line; blank lines and `#` comments are ignored.
export function parseDateList(text: string): ParsedDates {
  const dates: string[] = [];
  const errors: string[] = [];
  for (const [index, raw] of text.split("\n").entries()) {
    const line = raw.trim();
    if (!line || line.startsWith("#")) continue;
    if (ISO_DATE.test(line)) {
      dates.push(line);
    } else {
      errors.push(`line ${index + 1}: not an ISO date: ${line}`);
    }
  }
  return { dates, errors };
}

export async function uploadHolidays(
  api: DocketApi,
  text: string,
): Promise<{ uploaded: number; errors: string[] }> {
  const parsed = parseDateList(text);
  if (parsed.errors.length > 0 || parsed.dates.length === 0) {
    return { uploaded: 0, errors: parsed.errors };
  }
  const result = await api.setHolidays(parsed.dates);
  return { uploaded: result.holidays.length, errors: [] };
}
