/** Strict CSV reader for qtm-sim sweep files (RFC 4180 quoting). */

export interface Table {
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const records: string[][] = [];
  let field = "";
  let record: string[] = [];
  let inQuotes = false;
  let i = 0;
  const pushField = () => {
    record.push(field);
    field = "";
  };
  const pushRecord = () => {
    pushField();
    records.push(record);
    record = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"' && field.length === 0) {
      inQuotes = true;
      i += 1;
    } else if (ch === ",") {
      pushField();
      i += 1;
    } else if (ch === "\r" && text[i + 1] === "\n") {
      pushRecord();
      i += 2;
    } else if (ch === "\n") {
      pushRecord();
      i += 1;
    } else {
      field += ch;
      i += 1;
    }
  }
  if (field.length > 0 || record.length > 0) {
    pushRecord();
  }
  if (inQuotes) {
    throw new Error("unterminated quoted field in CSV input");
  }
  if (records.length === 0) {
    throw new Error("CSV input is empty");
  }
  const columns = records[0];
  const rows = records.slice(1);
  for (const [k, row] of rows.entries()) {
    if (row.length !== columns.length) {
      throw new Error(
        `CSV row ${k + 1} has ${row.length} fields, header has ${columns.length}`,
      );
    }
  }
  return { columns, rows };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(
      `column "${name}" not found; available columns: ${table.columns.join(", ")}`,
    );
  }
  return idx;
}

/** Numeric view of one column; blank fields (failed sweep points) map to NaN. */
export function numericColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => {
    const raw = row[idx];
    if (raw === "") return NaN;
    const value = Number(raw);
    if (Number.isNaN(value) && raw !== "nan") {
      throw new Error(`column "${name}" has a non-numeric value "${raw}"`);
    }
    return value;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.rows.map((row) => row[idx]);
}
